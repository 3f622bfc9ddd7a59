"""Machine-readable classification tables, row verification and exhaustive search.

Rows are stored per characteristic class (p = 2, 3, 5, 7 and p > 7).  Each row
lists diagrams as [vertex1, edge, vertex2] monomials in named parameters,
e.g. "-z^-3" or "z^-1*q".  Exchange-graph data (n, l, the A+ window, the
points and labelled edges) is stored once per row id.
"""

from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from math import gcd, lcm
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .diagram import Diagram, tau
from .finiteness import Verdict, brute_force_real_roots, decide_graph
from .reflection import NotAllReflections, orbit
from .units import Unit, UnitGroup

DATA_VERSION = 1
GENERIC_ORDERS = (5, 7, 9, 11, 13, 16, 17, 19)


class ConstraintViolated(ValueError):
    pass


# monomials

_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class Monomial:
    negative: bool
    powers: Tuple[Tuple[str, int], ...]

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        s = text.replace(" ", "")
        negative = s.startswith("-")
        if negative:
            s = s[1:]
        powers = []
        for f in s.split("*"):
            if f == "1":
                continue
            m = _FACTOR.match(f)
            if not m:
                raise ValueError(f"bad monomial {text!r}")
            powers.append((m.group(1), int(m.group(2) or 1)))
        return cls(negative, tuple(powers))

    def evaluate(self, values: Mapping[str, Unit], group: UnitGroup) -> Unit:
        out = group.one()
        for name, e in self.powers:
            out = out * values[name] ** e
        return -out if self.negative else out

    def names(self) -> List[str]:
        return [n for n, _ in self.powers]


@dataclass(frozen=True)
class Param:
    name: str
    order: Optional[int] = None  # fixed primitive order, None for a generic unit
    exclude: Tuple[Monomial, ...] = ()
    exclude_orders: Tuple[int, ...] = ()


@dataclass(frozen=True)
class ExchangeGraph:
    n: int
    l: int
    sequence: Tuple[int, ...]
    points: Tuple[str, ...]  # "D3" is the third row diagram, "tD3" its vertex swap
    edges: Tuple[Tuple[str, int, str], ...]


@dataclass(frozen=True)
class TableRow:
    row_id: str
    table: str
    params: Tuple[Param, ...]
    diagrams: Tuple[Tuple[Monomial, Monomial, Monomial], ...]
    expected: ExchangeGraph

    @property
    def uses_minus_one(self) -> bool:
        # exclusions such as q != -1 are vacuous without -1, so only diagrams count
        return any(m.negative for d in self.diagrams for m in d)

    @property
    def generic(self) -> Tuple[Param, ...]:
        return tuple(p for p in self.params if p.order is None)


def table_for(p: int) -> str:
    return {2: "1", 3: "2", 5: "3", 7: "4"}.get(p, "5")


@lru_cache(maxsize=None)
def load_tables() -> Dict[str, Tuple[TableRow, ...]]:
    raw = json.loads(resources.files(__package__).joinpath("data/tables.json").read_text())
    if raw["version"] != DATA_VERSION:
        raise ValueError(f"unsupported table data version {raw['version']}")
    graphs = {}
    for rid, g in raw["exchange_graphs"].items():
        graphs[rid] = ExchangeGraph(g["n"], g["l"], tuple(g["sequence"]), tuple(g["points"]),
                                    tuple((a, int(i), b) for a, i, b in g["edges"]))
    out = {}
    for key, tab in raw["tables"].items():
        rows = []
        for r in tab["rows"]:
            params = []
            for name, spec in r["params"].items():
                if spec["kind"] == "root":
                    params.append(Param(name, int(spec["order"])))
                else:
                    params.append(Param(name, None, tuple(Monomial.parse(m) for m in spec["exclude"]),
                                        tuple(spec["exclude_orders"])))
            diagrams = tuple(tuple(Monomial.parse(m) for m in d) for d in r["diagrams"])
            rows.append(TableRow(r["id"], key, tuple(params), diagrams, graphs[r["id"]]))
        out[key] = tuple(rows)
    return out


def rows_for(p: int) -> Tuple[TableRow, ...]:
    return load_tables()[table_for(p)]


def get_row(p: int, row_id: str) -> TableRow:
    for r in rows_for(p):
        if r.row_id == row_id:
            return r
    raise KeyError(f"no row {row_id!r} in the table for p={p}")


# instantiation

def check_assignment(row: TableRow, values: Mapping[str, Unit]) -> None:
    group = None
    for prm in row.params:
        if prm.name not in values:
            raise ConstraintViolated(f"row {row.row_id}: missing parameter {prm.name}")
        u = values[prm.name]
        group = group or u.group
        if u.group != group:
            raise ConstraintViolated("parameters live in different unit groups")
        if prm.order is not None:
            if u.order() != prm.order:
                raise ConstraintViolated(f"row {row.row_id}: {prm.name}={u} is not of order {prm.order}")
            continue
        for m in prm.exclude:
            if m.negative and not u.group.has_minus_one():
                continue
            if u == m.evaluate(values, u.group):
                raise ConstraintViolated(f"row {row.row_id}: {prm.name} must avoid {u}")
        if u.order() in prm.exclude_orders:
            raise ConstraintViolated(f"row {row.row_id}: {prm.name} must not have order {u.order()}")


def instantiate_row(row: TableRow, p: int, values: Mapping[str, Unit],
                    group: Optional[UnitGroup] = None) -> List[Diagram]:
    """Evaluate every diagram of the row at the given parameter values."""
    if row.table != table_for(p):
        raise ConstraintViolated(f"row {row.row_id} of table {row.table} does not apply to p={p}")
    if group is None:
        if not values:
            group = UnitGroup(p, 2 if p != 2 and row.uses_minus_one else 1)
        else:
            group = next(iter(values.values())).group
    if group.p != p:
        raise ConstraintViolated(f"unit group has characteristic {group.p}, not {p}")
    if row.uses_minus_one and not group.has_minus_one():
        raise ConstraintViolated(f"-1 is not in {group}")
    check_assignment(row, values)
    return [Diagram(v1.evaluate(values, group), v2.evaluate(values, group), e.evaluate(values, group))
            for v1, e, v2 in row.diagrams]


def assignment(row: TableRow, p: int, orders: Mapping[str, Optional[int]] = None
               ) -> Dict[str, Unit]:
    """Parameters at chosen orders: a generic parameter given None becomes a free generator.

    The torsion modulus is the lcm of the orders, doubled when -1 is needed in odd p.
    """
    orders = dict(orders or {})
    for prm in row.params:
        if prm.order is not None:
            orders[prm.name] = prm.order
        elif prm.name not in orders:
            raise ConstraintViolated(f"row {row.row_id}: no order given for {prm.name}")
    finite = [o for o in orders.values() if o is not None]
    n = lcm(1, *finite)
    if p != 2 and row.uses_minus_one:
        n = lcm(n, 2)
    free_names = [name for name, o in orders.items() if o is None]
    group = UnitGroup(p, n, len(free_names))
    values = {}
    for name, o in orders.items():
        values[name] = group.gen(free_names.index(name)) if o is None else group.zeta(n // o)
    return values


def default_assignments(row: TableRow, p: int, count: int = 3) -> List[Dict[str, Unit]]:
    """Admissible assignments: several orders for generic parameters plus one free run."""
    gen = row.generic
    if not gen:
        return [assignment(row, p)]
    out = []
    for o in GENERIC_ORDERS:
        if gcd(o, p) != 1:
            continue
        try:
            vals = assignment(row, p, {g.name: o for g in gen})
            check_assignment(row, vals)
        except ConstraintViolated:
            continue
        out.append(vals)
        if len(out) == count:
            break
    out.append(assignment(row, p, {g.name: None for g in gen}))
    return out


# verification

@dataclass
class RowReport:
    row_id: str
    p: int
    values: Dict[str, str]
    verdict: Optional[Verdict] = None
    points: int = 0
    mismatches: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"row": self.row_id, "p": self.p, "values": self.values, "ok": self.ok,
                "points": self.points, "mismatches": list(self.mismatches)}


def _named_points(row: TableRow, diagrams: Sequence[Diagram]) -> Dict[str, Diagram]:
    out = {}
    for name in row.expected.points:
        twin = name.startswith("t")
        d = diagrams[int(name.lstrip("tD")) - 1]
        out[name] = tau(d) if twin else d
    return out


def verify_row(row: TableRow, p: int, values: Mapping[str, Unit]) -> RowReport:
    """Compare the orbit of the row's first diagram with the recorded exchange graph."""
    rep = RowReport(row.row_id, p, {k: str(v) for k, v in values.items()})
    try:
        diagrams = instantiate_row(row, p, values)
    except ConstraintViolated as exc:
        rep.mismatches.append(f"instantiation: {exc}")
        return rep
    try:
        g = orbit(diagrams[0], cap=1000)
    except NotAllReflections as exc:
        rep.mismatches.append(f"orbit: {exc}")
        return rep
    v = decide_graph(g)
    rep.verdict, rep.points = v, len(g)
    exp = row.expected
    if not v.is_finite:
        rep.mismatches.append(f"verdict {v.status} ({v.reason})")
        return rep
    if (v.n, v.l) != (exp.n, exp.l):
        rep.mismatches.append(f"(n, l) = ({v.n}, {v.l}), expected ({exp.n}, {exp.l})")
    if v.sequence != exp.sequence:
        rep.mismatches.append(f"window {v.sequence}, expected {exp.sequence}")
    named = _named_points(row, diagrams)
    got = set(g.points)
    want = set(named.values())
    if got != want or len(want) != len(named):
        rep.mismatches.append(f"points: orbit has {len(got)}, table names {len(named)} "
                              f"({len(want)} distinct); extra {sorted(map(str, got - want))}, "
                              f"missing {sorted(map(str, want - got))}")
        return rep
    expected_edges = set()
    for a, i, b in exp.edges:
        x, y = g.index[named[a]], g.index[named[b]]
        expected_edges.add((min(x, y), max(x, y), i))
        if g.r(i, x) != y:
            rep.mismatches.append(f"r{i}({a}) is not {b}")
    actual = {(x, y, i) for (x, y), labels in g.exchange_edges().items() for i in labels}
    if actual != expected_edges:
        rep.mismatches.append(f"exchange edges differ: {sorted(actual ^ expected_edges)}")
    return rep


def verify_tables(primes: Iterable[int] = (2, 3, 5, 7, 11, 13),
                  row_id: Optional[str] = None) -> List[RowReport]:
    reports = []
    for p in primes:
        for row in rows_for(p):
            if row_id is not None and row.row_id != row_id:
                continue
            for vals in default_assignments(row, p):
                reports.append(verify_row(row, p, vals))
    return reports


# matching and search

def _parameter_values(row: TableRow, group: UnitGroup) -> Iterator[Dict[str, Unit]]:
    """All admissible parameter assignments inside the torsion units of the group."""
    choices = []
    for prm in row.params:
        if prm.order is None:
            choices.append(group.torsion_units())
        elif group.torsion % prm.order == 0:
            step = group.torsion // prm.order
            choices.append([group.zeta(step * k) for k in range(prm.order) if gcd(k, prm.order) == 1])
        else:
            return
    names = [prm.name for prm in row.params]
    for combo in product(*choices):
        vals = dict(zip(names, combo))
        try:
            check_assignment(row, vals)
        except ConstraintViolated:
            continue
        yield vals


@lru_cache(maxsize=64)
def row_instances(p: int, n: int) -> Dict[Diagram, str]:
    """Every diagram of every row whose parameters lie in mu_n, mapped to its first row."""
    group = UnitGroup(p, n)
    out: Dict[Diagram, str] = {}
    for row in rows_for(p):
        if row.uses_minus_one and not group.has_minus_one():
            continue
        for vals in _parameter_values(row, group):
            for d in instantiate_row(row, p, vals, group):
                out.setdefault(d, row.row_id)
    return out


def match_diagram_to_row(d: Diagram) -> Optional[str]:
    """Row id containing d or its vertex swap, for diagrams with root-of-unity labels."""
    if not d.is_torsion():
        raise ValueError("matching needs all labels to be roots of unity")
    if d.group.free_rank:
        g0 = UnitGroup(d.p, d.group.torsion)
        d = Diagram(*(g0.unit(u.torsion) for u in (d.q11, d.q22, d.q0)))
    inst = row_instances(d.p, d.group.torsion)
    return inst.get(d) or inst.get(tau(d))


def scalar_key(d: Diagram) -> str:
    """Group-independent name: each root of unity written as k/N in lowest terms."""
    def frac(u: Unit) -> str:
        n = u.group.torsion
        g = gcd(u.torsion, n)
        return f"{u.torsion // g}/{n // g}"
    return f"({frac(d.q11)}, {frac(d.q22)}, {frac(d.q0)})"


def canonical(d: Diagram) -> Diagram:
    t = tau(d)
    return t if t.key() < d.key() else d


def is_finite_dimensional(d: Diagram, cap: int = 10_000) -> bool:
    """Finite Weyl groupoid and every label on the orbit a root of unity."""
    from .finiteness import decide_finite
    v = decide_finite(d, cap)
    if not v.is_finite:
        return False
    return all(x.is_torsion() for x in v.graph.points)


@dataclass
class SearchReport:
    p: int
    orders: Tuple[int, ...]
    scanned: int = 0
    finite: Dict[str, Dict] = field(default_factory=dict)  # scalar key -> record
    unmatched_finite: List[str] = field(default_factory=list)
    instances_not_found: List[str] = field(default_factory=list)
    inconsistent: List[str] = field(default_factory=list)
    root_mismatches: List[str] = field(default_factory=list)
    roots_checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.unmatched_finite or self.instances_not_found
                    or self.inconsistent or self.root_mismatches)

    def merge(self, other: "SearchReport") -> "SearchReport":
        out = SearchReport(self.p, tuple(sorted(set(self.orders) | set(other.orders))),
                           self.scanned + other.scanned)
        out.roots_checked = self.roots_checked + other.roots_checked
        out.finite = dict(self.finite)
        for k, rec in other.finite.items():
            # the same scalars found at several moduli: keep the smallest
            if k not in out.finite or rec["diagram"]["torsion"] < out.finite[k]["diagram"]["torsion"]:
                out.finite[k] = rec
        for name in ("unmatched_finite", "instances_not_found", "inconsistent", "root_mismatches"):
            setattr(out, name, sorted(set(getattr(self, name)) | set(getattr(other, name))))
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "p": self.p,
            "orders": list(self.orders),
            "scanned": self.scanned,
            "finite_count": len(self.finite),
            "finite": [self.finite[k] for k in sorted(self.finite)],
            "unmatched_finite": list(self.unmatched_finite),
            "instances_not_found": list(self.instances_not_found),
            "inconsistent": list(self.inconsistent),
            "root_mismatches": list(self.root_mismatches),
            "roots_checked": self.roots_checked,
            "ok": self.ok,
        }


def _signed_roots(v: Verdict):
    return set(v.positive_roots) | {(-a, -b) for a, b in v.positive_roots}


def scan_modulus(p: int, n: int, check_roots: bool = False) -> SearchReport:
    """Decide every triple in mu_n^3 and cross-check against the tables."""
    group = UnitGroup(p, n)
    units = group.torsion_units()
    status: Dict[Diagram, Verdict] = {}
    rep = SearchReport(p, (n,))
    for a, b, c in product(range(n), repeat=3):
        d = Diagram(units[a], units[b], units[c])
        rep.scanned += 1
        if d in status:
            continue
        try:
            g = orbit(d, cap=n ** 3 + 1)
        except NotAllReflections as exc:
            for x in exc.visited:
                status[x] = Verdict("not_all_reflections")
            continue
        verdicts = [decide_graph(g.rebased(x)) for x in range(len(g))]
        kinds = {v.status for v in verdicts}
        if len(kinds) != 1:
            rep.inconsistent.append(f"{d}: mixed verdicts {sorted(kinds)}")
        for x, v in enumerate(verdicts):
            status[g.points[x]] = v
            if check_roots and v.is_finite:
                rep.roots_checked += 1
                brute = brute_force_real_roots(g, x)
                if brute != _signed_roots(v):
                    rep.root_mismatches.append(str(g.points[x]))
    inst = row_instances(p, n)
    rows = {r.row_id: r for r in rows_for(p)}
    for d, v in status.items():
        if not v.is_finite:
            continue
        cd = canonical(d)
        label = cd.label()
        key = scalar_key(cd)
        if key in rep.finite:
            continue
        rid = inst.get(cd) or inst.get(tau(cd))
        rep.finite[key] = {"diagram": cd.to_json(), "label": label, "row": rid, "n": v.n, "l": v.l,
                           "points": len(v.graph)}
        if rid is None:
            rep.unmatched_finite.append(label)
            continue
        exp = rows[rid].expected
        if (v.n, v.l) != (exp.n, exp.l):
            rep.inconsistent.append(f"{label}: row {rid} but (n, l) = ({v.n}, {v.l})")
    for d, rid in inst.items():
        v = status.get(d)
        if v is None or not v.is_finite:
            rep.instances_not_found.append(f"row {rid}: {d}")
    rep.unmatched_finite.sort()
    rep.instances_not_found.sort()
    return rep


def _scan(args):
    return scan_modulus(*args)


def search(p: int, orders: Sequence[int], jobs: int = 1, check_roots: bool = False) -> SearchReport:
    """Exhaustive scan of (mu_N)^3 for each N; shards by N run in parallel when jobs > 1."""
    for n in orders:
        if gcd(n, p) != 1:
            raise ValueError(f"order {n} is not coprime to p={p}")
    tasks = [(p, n, check_roots) for n in orders]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan, tasks))
    else:
        parts = [_scan(t) for t in tasks]
    out = SearchReport(p, ())
    for part in parts:
        out = out.merge(part)
    return out


SEARCH_ORDERS: Dict[int, Tuple[int, ...]] = {
    2: (9, 15, 7, 5, 3),
    3: (20, 14, 10, 8, 5, 4),
    5: (24, 18, 12, 8, 14, 6, 4),
    7: (24, 20, 15, 12, 9, 8, 10, 6, 30, 18),
    11: (24, 20, 15, 12, 9, 8, 7, 6, 14, 30, 18),
}
