"""Fundamental domains of p-periodic link diagrams and their cyclic lifts.

A :class:`SeamTangle` is the quotient diagram cut open along a ray from the
rotation axis.  Open strands run between the two walls of the cut; closed
strands stay inside.  Gluing Right-i of copy t to Left-i of copy t+1 for
t = 0..p-1 rebuilds the periodic diagram.

Crossing signs are data, not derived from a planar picture.  Only signs
and incidences enter the linking numbers and writhes.
"""

from __future__ import annotations

import json
import random
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .circulant import is_circulant
from .linalg import IntMatrix, require_prime

LEFT, RIGHT = "L", "R"
OVER, UNDER = "over", "under"


class TangleFormatError(ValueError):
    """Tangle JSON is structurally malformed."""


class InvalidTangleError(ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class DiagramInconsistencyError(RuntimeError):
    """Crossing data cannot come from a link diagram (odd linking sum)."""


@dataclass(frozen=True)
class Endpoint:
    wall: str
    pos: int


@dataclass(frozen=True)
class Pass:
    crossing: str
    role: str


@dataclass(frozen=True)
class Crossing:
    id: str
    sign: int


@dataclass(frozen=True)
class OpenStrand:
    id: str
    start: Endpoint
    end: Endpoint
    passes: tuple[Pass, ...] = ()


@dataclass(frozen=True)
class ClosedStrand:
    id: str
    passes: tuple[Pass, ...] = ()


@dataclass(frozen=True)
class SeamTangle:
    m: int
    crossings: tuple[Crossing, ...] = ()
    open_strands: tuple[OpenStrand, ...] = ()
    closed_strands: tuple[ClosedStrand, ...] = ()
    # keyed by strand id; the kinks count towards that strand's component
    framing_kinks: dict = field(default_factory=dict)

    @property
    def strand_ids(self) -> list[str]:
        return [s.id for s in self.open_strands] + [s.id for s in self.closed_strands]

    def strand(self, sid: str):
        for s in self.open_strands + self.closed_strands:
            if s.id == sid:
                return s
        raise KeyError(sid)

    @classmethod
    def from_dict(cls, data: dict) -> "SeamTangle":
        try:
            def passes(raw):
                return tuple(Pass(str(x["crossing"]), str(x["role"])) for x in raw or ())

            def endpoint(raw):
                return Endpoint(str(raw["wall"]), _as_int(raw["pos"]))

            return cls(
                m=_as_int(data["m"]),
                crossings=tuple(Crossing(str(c["id"]), _as_int(c["sign"])) for c in data.get("crossings", ())),
                open_strands=tuple(
                    OpenStrand(str(s["id"]), endpoint(s["start"]), endpoint(s["end"]), passes(s.get("passes")))
                    for s in data.get("open_strands", ())
                ),
                closed_strands=tuple(
                    ClosedStrand(str(s["id"]), passes(s.get("passes"))) for s in data.get("closed_strands", ())
                ),
                framing_kinks={str(k): _as_int(v) for k, v in (data.get("framing_kinks") or {}).items()},
            )
        except (KeyError, TypeError, AttributeError) as exc:
            raise TangleFormatError(f"malformed tangle: {exc!r}") from exc

    @classmethod
    def from_json(cls, text: str) -> "SeamTangle":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TangleFormatError(f"line {exc.lineno}: {exc.msg}") from exc
        if not isinstance(data, dict):
            raise TangleFormatError("tangle JSON must be an object")
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        def passes(ps):
            return [{"crossing": x.crossing, "role": x.role} for x in ps]

        return {
            "m": self.m,
            "crossings": [{"id": c.id, "sign": c.sign} for c in self.crossings],
            "open_strands": [
                {
                    "id": s.id,
                    "start": {"wall": s.start.wall, "pos": s.start.pos},
                    "end": {"wall": s.end.wall, "pos": s.end.pos},
                    "passes": passes(s.passes),
                }
                for s in self.open_strands
            ],
            "closed_strands": [{"id": s.id, "passes": passes(s.passes)} for s in self.closed_strands],
            "framing_kinks": dict(self.framing_kinks),
        }


def _as_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected integer, got {x!r}")
    return x


def validate(t: SeamTangle) -> list[str]:
    """Return a list of problems with ``t``; empty means valid."""
    diags = []
    if t.m < 0:
        diags.append(f"negative seam size m={t.m}")

    ids = t.strand_ids
    seen = set()
    for sid in ids:
        if sid in seen:
            diags.append(f"duplicate strand id {sid!r}")
        seen.add(sid)

    starts, ends = {}, {}
    for s in t.open_strands:
        for kind, ep, table in (("start", s.start, starts), ("end", s.end, ends)):
            if ep.wall not in (LEFT, RIGHT):
                diags.append(f"strand {s.id!r}: bad wall {ep.wall!r}")
                continue
            if not 1 <= ep.pos <= t.m:
                diags.append(f"strand {s.id!r}: {kind} position {ep.pos} outside 1..{t.m}")
                continue
            key = (ep.wall, ep.pos)
            if key in starts or key in ends:
                diags.append(f"endpoint {ep.wall}-{ep.pos} used more than once")
            table[key] = s.id
    for wall in (LEFT, RIGHT):
        for pos in range(1, t.m + 1):
            if (wall, pos) not in starts and (wall, pos) not in ends:
                diags.append(f"endpoint {wall}-{pos} is not attached to any strand")
    for pos in range(1, t.m + 1):
        r_out = (RIGHT, pos) in ends
        l_in = (LEFT, pos) in starts
        r_in = (RIGHT, pos) in starts
        l_out = (LEFT, pos) in ends
        if (r_out and not l_in) or (r_in and not l_out) or (l_in and not r_out) or (l_out and not r_in):
            diags.append(f"seam orientation mismatch at position {pos}")

    signs = {}
    for c in t.crossings:
        if c.id in signs:
            diags.append(f"duplicate crossing id {c.id!r}")
        if c.sign not in (1, -1):
            diags.append(f"crossing {c.id!r}: sign must be +1 or -1, got {c.sign}")
        signs[c.id] = c.sign
    roles = defaultdict(list)
    for s in t.open_strands + t.closed_strands:
        for ps in s.passes:
            if ps.role not in (OVER, UNDER):
                diags.append(f"strand {s.id!r}: bad role {ps.role!r} at crossing {ps.crossing!r}")
            if ps.crossing not in signs:
                diags.append(f"strand {s.id!r} passes unknown crossing {ps.crossing!r}")
            roles[ps.crossing].append(ps.role)
    for cid in signs:
        rs = roles.get(cid, [])
        if len(rs) != 2:
            diags.append(f"crossing {cid!r}: crossing incidence != 2 (found {len(rs)})")
        elif sorted(rs) != [OVER, UNDER]:
            diags.append(f"crossing {cid!r}: needs one over and one under pass, got {rs}")

    for key in t.framing_kinks:
        if key not in seen:
            diags.append(f"framing_kinks refers to unknown strand {key!r}")
    return diags


def _require_valid(t: SeamTangle) -> None:
    diags = validate(t)
    if diags:
        raise InvalidTangleError(diags)


@dataclass(frozen=True)
class QuotientComponentInfo:
    id: str
    strands: tuple[str, ...]
    winding: int
    framing_kinks: int = 0


def _successors(t: SeamTangle) -> dict[str, tuple[str, int]]:
    """For each open strand: the strand that continues it and the copy shift."""
    starts = {(s.start.wall, s.start.pos): s.id for s in t.open_strands}
    nxt = {}
    for s in t.open_strands:
        if s.end.wall == RIGHT:
            nxt[s.id] = (starts[(LEFT, s.end.pos)], 1)
        else:
            nxt[s.id] = (starts[(RIGHT, s.end.pos)], -1)
    return nxt


def trace_quotient(t: SeamTangle) -> list[QuotientComponentInfo]:
    """Components of the underlying (quotient) link, in strand-listing order."""
    _require_valid(t)
    nxt = _successors(t)
    owner = {}
    comps = []
    for s in t.open_strands:
        if s.id in owner:
            continue
        cycle, winding, cur = [], 0, s.id
        while cur not in owner:
            owner[cur] = s.id
            cycle.append(cur)
            cur, shift = nxt[cur]
            winding += shift
        comps.append((s.id, tuple(cycle), winding))
    for s in t.closed_strands:
        owner[s.id] = s.id
        comps.append((s.id, (s.id,), 0))
    kinks = defaultdict(int)
    for sid, k in t.framing_kinks.items():
        kinks[owner[sid]] += k
    return [QuotientComponentInfo(cid, strands, w, kinks[cid]) for cid, strands, w in comps]


@dataclass(frozen=True)
class StrongPeriodicity:
    strongly_periodic: bool
    p: int
    windings: dict[str, int]
    failing: tuple[str, ...]

    def __bool__(self):
        return self.strongly_periodic


def is_strongly_periodic(t: SeamTangle, p: int) -> StrongPeriodicity:
    """Every quotient component must link the axis a multiple of p times."""
    require_prime(p)
    comps = trace_quotient(t)
    windings = {c.id: c.winding for c in comps}
    failing = tuple(c.id for c in comps if c.winding % p)
    return StrongPeriodicity(not failing, p, windings, failing)


@dataclass(frozen=True)
class LiftedComponent:
    orbit: int
    copy: int
    pieces: tuple[tuple[str, int], ...]
    seam_winding: int  # net copy-boundary crossings; linking with the axis is this / p

    @property
    def label(self) -> str:
        return f"l({self.orbit + 1},{self.copy + 1})"


@dataclass(frozen=True)
class CrossingInstance:
    crossing: str
    copy: int
    sign: int
    over: int
    under: int


@dataclass(frozen=True)
class LiftedDiagram:
    p: int
    tangle: SeamTangle
    quotient: tuple[QuotientComponentInfo, ...]
    components: tuple[LiftedComponent, ...]
    crossing_instances: tuple[CrossingInstance, ...]
    include_axis: bool = False
    axis_framing: Optional[int] = None

    @property
    def strongly_periodic(self) -> bool:
        return all(c.winding % self.p == 0 for c in self.quotient)

    def orbit_sizes(self) -> list[int]:
        sizes = [0] * len(self.quotient)
        for c in self.components:
            sizes[c.orbit] += 1
        return sizes

    @property
    def labels(self) -> list[str]:
        out = [c.label for c in self.components]
        return out + ["axis"] if self.include_axis else out


def lift(t: SeamTangle, p: int, include_axis: bool = False, axis_framing: Optional[int] = None) -> LiftedDiagram:
    """Glue p copies of ``t`` cyclically and trace the resulting link.

    Lifts of quotient component i are labelled by the copy holding the
    component's first strand, so rotating by one copy sends l(i,k) to
    l(i,k+1).
    """
    require_prime(p)
    quotient = trace_quotient(t)
    if include_axis:
        if axis_framing is None:
            raise ValueError("axis_framing is required when include_axis is set")
        if gcd(axis_framing, p) != 1:
            warnings.warn(f"axis framing {axis_framing} is not coprime to p={p}; the action will have fixed points")
    elif axis_framing is not None:
        raise ValueError("axis_framing given without include_axis")

    nxt = _successors(t)
    where = {}  # (strand, copy) -> component index
    comps = []
    for orbit, qc in enumerate(quotient):
        base = qc.strands[0]
        for copy in range(p):
            if (base, copy) in where:
                continue
            idx = len(comps)
            pieces, net = [], 0
            cur = (base, copy)
            if base not in nxt:  # closed strand
                where[cur] = idx
                pieces.append(cur)
            else:
                while cur not in where:
                    where[cur] = idx
                    pieces.append(cur)
                    sid, k = cur
                    n_sid, shift = nxt[sid]
                    net += shift
                    cur = (n_sid, (k + shift) % p)
            comps.append(LiftedComponent(orbit, copy, tuple(pieces), net))

    owner = {}
    for s in t.open_strands + t.closed_strands:
        for ps in s.passes:
            owner.setdefault(ps.crossing, {})[ps.role] = s.id
    instances = []
    for copy in range(p):
        for c in t.crossings:
            o = owner[c.id]
            instances.append(
                CrossingInstance(c.id, copy, c.sign, where[(o[OVER], copy)], where[(o[UNDER], copy)])
            )
    return LiftedDiagram(p, t, tuple(quotient), tuple(comps), tuple(instances), include_axis, axis_framing)


def linking_matrix(d: LiftedDiagram) -> IntMatrix:
    """Linking matrix in the order l(1,1..p), l(2,1..p), ...; axis last if present.

    Diagonal entries are blackboard framings (self-writhe) plus the kink
    annotation of the quotient component, counted once per copy the lift
    passes through.
    """
    n = len(d.components)
    doubled = [[0] * n for _ in range(n)]
    writhe = [0] * n
    for ci in d.crossing_instances:
        if ci.over == ci.under:
            writhe[ci.over] += ci.sign
        else:
            doubled[ci.over][ci.under] += ci.sign
            doubled[ci.under][ci.over] += ci.sign
    size = n + (1 if d.include_axis else 0)
    a = [[0] * size for _ in range(size)]
    for u in range(n):
        for v in range(u + 1, n):
            if doubled[u][v] % 2:
                lu, lv = d.components[u].label, d.components[v].label
                raise DiagramInconsistencyError(
                    f"odd signed crossing sum {doubled[u][v]} between {lu} and {lv}"
                )
            a[u][v] = a[v][u] = doubled[u][v] // 2
    sizes = d.orbit_sizes()
    for u, comp in enumerate(d.components):
        kinks = d.quotient[comp.orbit].framing_kinks
        a[u][u] = writhe[u] + kinks * (d.p // sizes[comp.orbit])
    if d.include_axis:
        for u, comp in enumerate(d.components):
            a[u][n] = a[n][u] = comp.seam_winding // d.p
        a[n][n] = d.axis_framing
    return IntMatrix.from_rows(a, cols=size)


def quotient_linking_matrix(t: SeamTangle) -> IntMatrix:
    """Linking matrix of the underlying link itself (one copy, glued to itself)."""
    comps = trace_quotient(t)
    comp_of = {sid: i for i, c in enumerate(comps) for sid in c.strands}
    owner = {}
    for s in t.open_strands + t.closed_strands:
        for ps in s.passes:
            owner.setdefault(ps.crossing, {})[ps.role] = s.id
    n = len(comps)
    doubled = [[0] * n for _ in range(n)]
    diag = [c.framing_kinks for c in comps]
    for c in t.crossings:
        u, v = comp_of[owner[c.id][OVER]], comp_of[owner[c.id][UNDER]]
        if u == v:
            diag[u] += c.sign
        else:
            doubled[u][v] += c.sign
            doubled[v][u] += c.sign
    a = [[0] * n for _ in range(n)]
    for u in range(n):
        a[u][u] = diag[u]
        for v in range(n):
            if u != v:
                if doubled[u][v] % 2:
                    raise DiagramInconsistencyError(
                        f"odd signed crossing sum between quotient components {comps[u].id!r} and {comps[v].id!r}"
                    )
                a[u][v] = doubled[u][v] // 2
    return IntMatrix.from_rows(a, cols=n)


def is_orbitally_separated(t: SeamTangle, p: int) -> bool:
    """Strongly p-periodic with an algebraically split quotient link."""
    if not is_strongly_periodic(t, p):
        raise ValueError(f"tangle is not strongly {p}-periodic")
    q = quotient_linking_matrix(t)
    return all(q[i, j] == 0 for i in range(q.rows) for j in range(q.cols) if i != j)


@dataclass(frozen=True)
class BlockReport:
    p: int
    orbits: int
    all_circulant: bool
    diagonal_symmetric: bool
    equal_framings: bool
    off_diagonal_zero: bool
    non_circulant: tuple[tuple[int, int], ...] = ()

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "orbits": self.orbits,
            "all_circulant": self.all_circulant,
            "diagonal_symmetric": self.diagonal_symmetric,
            "equal_framings": self.equal_framings,
            "off_diagonal_zero": self.off_diagonal_zero,
            "non_circulant": [list(b) for b in self.non_circulant],
        }


def block_structure(d: LiftedDiagram, a: Optional[IntMatrix] = None) -> BlockReport:
    """Inspect the p x p blocks of a strongly periodic lift's linking matrix."""
    if not d.strongly_periodic:
        raise ValueError("block structure is only defined for strongly periodic lifts")
    a = linking_matrix(d) if a is None else a
    p, n = d.p, len(d.quotient)
    bad, diag_sym, framings, off_zero = [], True, True, True
    for i in range(n):
        for j in range(n):
            blk = a.submatrix(range(i * p, i * p + p), range(j * p, j * p + p))
            if not is_circulant(blk):
                bad.append((i, j))
            if i == j:
                diag_sym &= blk.is_symmetric()
                framings &= len({blk[k, k] for k in range(p)}) <= 1
            elif any(blk.entries):
                off_zero = False
    return BlockReport(p, n, not bad, diag_sym, framings, off_zero, tuple(bad))


def random_tangle(m: int, n_crossings: int, seed: int, n_closed: int = 0) -> SeamTangle:
    """A valid random tangle.

    Seam directions and a start-to-end matching are drawn first, then
    crossings are added either as curls (one crossing of a strand with
    itself) or as clasps (two crossings between a pair of strands, with
    equal or opposite signs).  Clasps keep every linking sum even in every
    lift.
    """
    rng = random.Random(seed)
    starts, ends = [], []
    for pos in range(1, m + 1):
        if rng.random() < 0.5:
            starts.append(Endpoint(LEFT, pos))
            ends.append(Endpoint(RIGHT, pos))
        else:
            starts.append(Endpoint(RIGHT, pos))
            ends.append(Endpoint(LEFT, pos))
    rng.shuffle(ends)
    ids = [f"s{k}" for k in range(m)] + [f"c{k}" for k in range(n_closed)]
    passes = {sid: [] for sid in ids}
    crossings = []

    def put(sid, cid, role):
        lst = passes[sid]
        lst.insert(rng.randint(0, len(lst)), Pass(cid, role))

    budget = n_crossings
    while budget > 0 and ids:
        cid = f"x{len(crossings)}"
        if budget == 1 or rng.random() < 0.3:
            sid = rng.choice(ids)
            crossings.append(Crossing(cid, rng.choice((1, -1))))
            put(sid, cid, OVER)
            put(sid, cid, UNDER)
            budget -= 1
            continue
        a, b = rng.choice(ids), rng.choice(ids)
        s1 = rng.choice((1, -1))
        s2 = s1 if rng.random() < 0.6 else -s1
        c2 = f"x{len(crossings) + 1}"
        crossings += [Crossing(cid, s1), Crossing(c2, s2)]
        top = rng.random() < 0.5
        put(a, cid, OVER if top else UNDER)
        put(b, cid, UNDER if top else OVER)
        put(a, c2, UNDER if top else OVER)
        put(b, c2, OVER if top else UNDER)
        budget -= 2

    kinks = {}
    if ids and rng.random() < 0.3:
        kinks[rng.choice(ids)] = rng.randint(-2, 2)
    return SeamTangle(
        m=m,
        crossings=tuple(crossings),
        open_strands=tuple(
            OpenStrand(f"s{k}", starts[k], ends[k], tuple(passes[f"s{k}"])) for k in range(m)
        ),
        closed_strands=tuple(ClosedStrand(f"c{k}", tuple(passes[f"c{k}"])) for k in range(n_closed)),
        framing_kinks=kinks,
    )


def sample_tangle(seed: int) -> SeamTangle:
    """Draw the size parameters from ``seed`` too; used by the property sweeps."""
    rng = random.Random(seed)
    return random_tangle(
        m=rng.randint(0, 5),
        n_crossings=rng.randint(0, 10),
        seed=rng.getrandbits(32),
        n_closed=rng.randint(0, 2),
    )
