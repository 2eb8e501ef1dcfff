"""Julia reduction of binary forms and genus 2 curves with extra involutions."""

from .forms import (BinaryForm, LinearMap, UnimodularMap, content_and_primitive,
                    discriminant, even_part_decompose, height, parse_form, reverse,
                    to_text, transform)
from .julia import JuliaResult, JuliaWeights, julia, minimize_theta, zero_map
from .genus2 import AutLabel, Genus2Invariants, ModuliKey, aut_label, igusa, moduli_key
from .reduce import reduce_even_form, reduce_form, reduce_pipeline, to_fundamental_domain

__version__ = "0.1.0"
