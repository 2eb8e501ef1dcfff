"""The database of curves y^2 = x^6 + a x^4 + b x^2 + 1, max(|a|, |b|) <= hmax.

Tuples are visited by height shell, and lexicographically inside a shell.
A tuple gives a new moduli point the first time its point is seen.  Points
are compared through the absolute invariants (J4/J2^2, J6/J2^3, J10/J2^5),
with every curve of J2 = 0 sharing a single class; that is the comparison
the published counts were made with.  ``dedup="moduli"`` uses the
C-isomorphism key instead.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import List, Optional, Sequence

from .forms import BinaryForm, discriminant, fmt_rational, height, parse_form, primitive
from .genus2 import (AutLabel, Genus2Invariants, ModuliKey, aut_label, igusa,
                     moduli_key)

log = logging.getLogger(__name__)

RECORD_FIELDS = ["a", "b", "height", "J2", "J4", "J6", "J10", "key", "aut", "new_point"]
STATS_FIELDS = ["h", "cum_tuples_j10", "new_moduli", "d4", "d6", "cum_points", "larger"]
J2_ZERO = "J2=0"


@dataclass
class CurveRecord:
    a: int
    b: int
    height: int
    invariants: Genus2Invariants
    j10_nonzero: bool
    key: Optional[ModuliKey] = None
    aut: Optional[AutLabel] = None
    is_new_moduli_point: bool = False

    @property
    def form(self) -> BinaryForm:
        return tuple_form(self.a, self.b)


@dataclass(frozen=True)
class ShellStats:
    h: int
    cum_tuples_j10: int
    new_moduli: int
    d4: int
    d6: int
    cum_points: int
    larger: int = 0

    def table_row(self):
        return (self.cum_tuples_j10, self.new_moduli, self.d4, self.d6, self.cum_points)


def tuple_form(a: int, b: int) -> BinaryForm:
    """The sextic of the tuple (1, 0, a, 0, b, 0, 1)."""
    return BinaryForm([1, 0, a, 0, b, 0, 1])


def shell(h: int):
    """Tuples (a, b) with max(|a|, |b|) = h, in lexicographic order."""
    if h == 0:
        return [(0, 0)]
    return [(a, b) for a in range(-h, h + 1) for b in range(-h, h + 1)
            if max(abs(a), abs(b)) == h]


def absolute_key(inv: Genus2Invariants):
    J2, J4, J6, J10 = inv.as_tuple()
    if J2 == 0:
        return J2_ZERO
    return (J4 / J2 ** 2, J6 / J2 ** 3, J10 / J2 ** 5)


def _invariants_job(pairs):
    out = []
    for a, b in pairs:
        inv = igusa(tuple_form(a, b))
        nz = inv.J10 != 0
        out.append((a, b, inv, nz, moduli_key(inv) if nz else None))
    return out


def _label_job(pairs):
    return [aut_label(tuple_form(a, b)) for a, b in pairs]


def enumerate_shell(h: int, labels: bool = True) -> List[CurveRecord]:
    """Records of one shell; the new-point flag is left for build_database."""
    recs = []
    for a, b, inv, nz, key in _invariants_job(shell(h)):
        aut = aut_label(tuple_form(a, b)) if (labels and nz) else None
        recs.append(CurveRecord(a, b, max(abs(a), abs(b)), inv, nz, key, aut))
    return recs


def degenerate_tuples(hmax: int):
    """Tuples with J10 = 0 (the sextic has a repeated root)."""
    out = []
    for h in range(hmax + 1):
        for a, b in shell(h):
            if discriminant(tuple_form(a, b)) == 0:          # J10 is a multiple of the discriminant
                out.append((a, b))
    return out


def _chunks(seq, n):
    k = max(1, (len(seq) + n - 1) // n)
    return [seq[i:i + k] for i in range(0, len(seq), k)]


def _run(job, items, jobs, chunk=400):
    parts = _chunks(items, max(1, len(items) // chunk)) if items else []
    if jobs and jobs > 1 and len(parts) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(job, parts))
    else:
        results = [job(p) for p in parts]
    out = []
    for r in results:
        out.extend(r)
    return out


def build_database(hmax: int, jobs: int = 1, dedup: str = "absolute"):
    """Returns (records, stats) for 0 <= height <= hmax."""
    if dedup not in ("absolute", "moduli"):
        raise ValueError("dedup must be 'absolute' or 'moduli'")
    order = [ab for h in range(hmax + 1) for ab in shell(h)]
    rows = _run(_invariants_job, order, jobs)
    recs = [CurveRecord(a, b, max(abs(a), abs(b)), inv, nz, key)
            for a, b, inv, nz, key in rows]

    # one automorphism computation per C-isomorphism class
    first_of_key = {}
    for r in recs:
        if r.j10_nonzero and r.key not in first_of_key:
            first_of_key[r.key] = (r.a, r.b)
    reps = list(first_of_key.values())
    labs = _run(_label_job, reps, jobs, chunk=200)
    label_of = dict(zip(first_of_key.keys(), labs))

    seen = set()
    for r in recs:
        if not r.j10_nonzero:
            log.info("degenerate tuple (%d, %d): J10 = 0", r.a, r.b)
            continue
        r.aut = label_of[r.key]
        k = absolute_key(r.invariants) if dedup == "absolute" else r.key
        if k not in seen:
            seen.add(k)
            r.is_new_moduli_point = True
    return recs, table1_stats(recs, hmax)


def table1_stats(recs: Sequence[CurveRecord], hmax: int) -> List[ShellStats]:
    """Aggregate per height; the height 0 tuple is counted with h = 1."""
    stats = []
    by_h = {}
    for r in recs:
        by_h.setdefault(max(r.height, 1), []).append(r)
    cum_t = 0
    cum_p = 0
    for h in range(1, hmax + 1):
        rs = by_h.get(h, [])
        cum_t += sum(1 for r in rs if r.j10_nonzero)
        new = [r for r in rs if r.is_new_moduli_point]
        cum_p += len(new)
        stats.append(ShellStats(
            h=h, cum_tuples_j10=cum_t, new_moduli=len(new),
            d4=sum(1 for r in new if r.aut is AutLabel.D4),
            d6=sum(1 for r in new if r.aut is AutLabel.D6),
            cum_points=cum_p,
            larger=sum(1 for r in new if r.aut in (AutLabel.G24, AutLabel.G48))))
    return stats


def build_table1(hmax: int, jobs: int = 1, dedup: str = "absolute") -> List[ShellStats]:
    return build_database(hmax, jobs, dedup)[1]


# ---------------------------------------------------------------------------
# CSV

def _record_row(r: CurveRecord):
    inv = r.invariants.as_tuple()
    return [r.a, r.b, r.height] + [fmt_rational(v) for v in inv] + [
        r.key.to_text() if r.key else "", str(r.aut) if r.aut else "",
        1 if r.is_new_moduli_point else 0]


def export_csv(items, path, kind: Optional[str] = None):
    """Write records or stats; ``kind`` is needed only for an empty list."""
    items = list(items)
    if kind is None:
        if not items:
            raise ValueError("kind must be given for an empty list")
        kind = "records" if isinstance(items[0], CurveRecord) else "stats"
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if kind == "records":
            w.writerow(RECORD_FIELDS)
            for r in items:
                w.writerow(_record_row(r))
        elif kind == "stats":
            w.writerow(STATS_FIELDS)
            for s in items:
                w.writerow([s.h, s.cum_tuples_j10, s.new_moduli, s.d4, s.d6, s.cum_points, s.larger])
        else:
            raise ValueError("unknown kind %r" % kind)


def read_records(path) -> List[CurveRecord]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            inv = Genus2Invariants(*(Fraction(row[k]) for k in ("J2", "J4", "J6", "J10")))
            out.append(CurveRecord(
                a=int(row["a"]), b=int(row["b"]), height=int(row["height"]),
                invariants=inv, j10_nonzero=inv.J10 != 0,
                key=ModuliKey.from_text(row["key"]) if row["key"] else None,
                aut=AutLabel.parse(row["aut"]) if row["aut"] else None,
                is_new_moduli_point=row["new_point"] == "1"))
    return out


def read_stats(path) -> List[ShellStats]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(ShellStats(**{k: int(v) for k, v in row.items() if k in STATS_FIELDS and v != ""}))
    return out


# ---------------------------------------------------------------------------
# fixtures and verification

def fixture_path(name: str) -> str:
    return str(resources.files("g2red").joinpath("data", name))


def _pad6(f: BinaryForm) -> BinaryForm:
    c = list(f.coeffs)
    return BinaryForm(c + [0] * (7 - len(c))) if len(c) < 7 else f


@dataclass
class Report:
    rows: list = field(default_factory=list)

    @property
    def mismatches(self):
        return [r for r in self.rows if not r["ok"]]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        return "%d rows, %d mismatches" % (len(self.rows), len(self.mismatches))


def verify_table1(stats: Sequence[ShellStats], fixture: Optional[str] = None,
                  upto: Optional[int] = None) -> Report:
    """Row-by-row comparison; rows missing from ``stats`` fail unless beyond ``upto``."""
    ref = read_stats(fixture or fixture_path("table1.csv"))
    if upto is not None:
        ref = [s for s in ref if s.h <= upto]
    got = {s.h: s for s in stats}
    rep = Report()
    for s in ref:
        g = got.get(s.h)
        ok = g is not None and g.table_row() == s.table_row()
        rep.rows.append({"h": s.h, "ok": ok, "expected": s.table_row(),
                         "got": g.table_row() if g else None})
    return rep


def read_table2(fixture: Optional[str] = None):
    rows = []
    with open(fixture or fixture_path("table2.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows.append({"num": int(row["num"]), "r": int(row["r"]),
                         "model": parse_form(row["model"]), "h": int(row["h"]),
                         "twist": _pad6(parse_form(row["twist"])),
                         "group": AutLabel.parse(row["group"])})
    return rows


def read_table3(fixture: Optional[str] = None):
    rows = []
    with open(fixture or fixture_path("table3.csv"), newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            rows.append({"case": int(row["case"]), "model": parse_form(row["model"]),
                         "reduced": _pad6(parse_form(row["reduced"])),
                         "group": AutLabel.parse(row["group"])})
    return rows


def verify_table2(fixture: Optional[str] = None) -> Report:
    rep = Report()
    for row in read_table2(fixture):
        f = row["model"]
        tw = primitive(row["twist"])
        key_ok = moduli_key(igusa(f)) == moduli_key(igusa(tw))
        lab = aut_label(f)
        lab_tw = aut_label(tw)
        c = f.coeffs
        r_ok = row["r"] == max(abs(c[2]), abs(c[4]))
        label_ok = lab is row["group"] and lab_tw is row["group"]
        rep.rows.append({"num": row["num"], "key_ok": key_ok, "label_ok": label_ok,
                         "r_ok": r_ok, "label": lab, "twist_label": lab_tw,
                         "expected": row["group"],
                         "ok": key_ok and label_ok and r_ok})
    return rep


def verify_table3(fixture: Optional[str] = None, primes=(2, 3, 5, 7)) -> Report:
    from .reduce import reduce_pipeline, variants

    rep = Report()
    for row in read_table3(fixture):
        res = reduce_pipeline(row["model"], primes=primes)
        g = res.model
        ref = row["reduced"]
        key_ok = moduli_key(igusa(g)) == moduli_key(igusa(ref))
        h_ok = height(g) <= height(ref)
        exact = any(v == ref for v in variants(g))
        rep.rows.append({"case": row["case"], "model": g, "height": height(g),
                         "paper_height": height(ref), "key_ok": key_ok,
                         "height_ok": h_ok, "exact": exact, "ok": key_ok and h_ok})
    return rep
