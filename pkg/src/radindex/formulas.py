"""Closed-form index computations and the method router.

Implements the hereditary table, the commutative-toupie formulas, the
single-relation pullback decomposition with its middle-subcategory test,
recognition of the published always-applicable families, the glued
multi-relation maximum, and a router that cross-validates methods.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    FormulaInapplicable,
    NotSingleRelationTree,
    OverlappedRelations,
    RadindexError,
    RepresentationInfinite,
    ShapeMismatch,
    Unsupported,
)
from .knitting import (
    DEFAULT_CAP,
    ARQuiver,
    knit,
    nilpotency_knit,
    reach,
    sectional_path_exists,
)
from .pathspace import radical_summands, top_of_injective_summands
from .quiver import (
    COMM,
    BoundQuiver,
    Relation,
    classify,
    component_vertices,
    dynkin_type,
    full_subquiver,
    path_walk,
    underlying_tree,
)
from .reductions import (
    commutative_toupie_shape,
    overlap_report,
    toupie_branch_vertex,
)
from .strings import nilpotency_string

_HEREDITARY = {"E6": 11, "E7": 17, "E8": 29}


def hereditary_index(dynkin: tuple[str, int]) -> int:
    """Index of a representation-finite hereditary algebra by type:
    A_n -> n, D_n -> 2n-3, E6/E7/E8 -> 11/17/29."""
    family, n = dynkin
    if family == "A" and n >= 1:
        return n
    if family == "D" and n >= 4:
        return 2 * n - 3
    if family == "E" and n in (6, 7, 8):
        return _HEREDITARY[f"E{n}"]
    raise ValueError(f"not a Dynkin type: {dynkin}")


# --------------------------------------------------------------------------
# pullback decomposition of a single-relation tree
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PullbackSplit:
    """Hereditary parts of a single-relation tree.

    a1 is the maximal connected hereditary part containing the source of
    the relation (the last relation arrow deleted), a2 the part containing
    its target (the first arrow deleted), core their intersection."""

    a1: BoundQuiver
    a2: BoundQuiver
    core: BoundQuiver
    relation: Relation


def _single_zero_relation(bq: BoundQuiver) -> Relation:
    zeros = bq.zero_relations()
    if len(zeros) != 1 or not bq.is_monomial() or not underlying_tree(bq.quiver):
        raise NotSingleRelationTree(
            "pullback decomposition needs a monomial tree with exactly one zero-relation"
        )
    return zeros[0]


def pullback_split(bq: BoundQuiver) -> PullbackSplit:
    rel = _single_zero_relation(bq)
    q = bq.quiver
    walk = path_walk(rel.path)
    first, last = walk[0], walk[-1]
    a = q.arrow(first).source
    b = q.arrow(last).target
    interior_start = q.arrow(first).target

    a1_verts = component_vertices(q, a, dropped_arrows=[last])
    a2_verts = component_vertices(q, b, dropped_arrows=[first])
    core_verts = component_vertices(q, interior_start, dropped_arrows=[first, last])

    a1 = full_subquiver(bq, a1_verts, dropped_arrows=[last])
    a2 = full_subquiver(bq, a2_verts, dropped_arrows=[first])
    core = full_subquiver(bq, core_verts, dropped_arrows=[first, last])
    if not (core_verts <= a1_verts and core_verts <= a2_verts):
        raise NotSingleRelationTree("relation interior does not sit in both parts")
    return PullbackSplit(a1, a2, core, rel)


def b_nonempty(bq: BoundQuiver, split: PullbackSplit, ar: ARQuiver) -> bool:
    """True iff some indecomposable lies outside Pred(injectives of the
    a2-only vertices) and Succ(projectives of the a1-only vertices)."""
    core_verts = set(split.core.quiver.vertices)
    a1_only = set(split.a1.quiver.vertices) - core_verts
    a2_only = set(split.a2.quiver.vertices) - core_verts
    idx = reach(ar)
    c_nodes = idx.succ_of(ar.projective(i).ident for i in sorted(a1_only))
    a_nodes = idx.pred_of(ar.injective(i).ident for i in sorted(a2_only))
    return len(a_nodes | c_nodes) < len(ar.nodes)


def a_cap_c_empty(bq: BoundQuiver, split: PullbackSplit, ar: ARQuiver) -> bool:
    """Whether Pred(DA') and Succ(C') are disjoint on the knitted quiver."""
    core_verts = set(split.core.quiver.vertices)
    a1_only = set(split.a1.quiver.vertices) - core_verts
    a2_only = set(split.a2.quiver.vertices) - core_verts
    idx = reach(ar)
    c_nodes = idx.succ_of(ar.projective(i).ident for i in sorted(a1_only))
    a_nodes = idx.pred_of(ar.injective(i).ident for i in sorted(a2_only))
    return not (a_nodes & c_nodes)


def sectional_criterion(bq: BoundQuiver, split: PullbackSplit, ar: ARQuiver) -> bool:
    """Sectional path from a summand of rad P_a to a summand of
    I_b / soc I_b, where a and b are the relation endpoints."""
    q = bq.quiver
    walk = path_walk(split.relation.path)
    a = q.arrow(walk[0]).source
    b = q.arrow(walk[-1]).target
    sources = {ar.locate(dv).ident for dv in radical_summands(bq, a)}
    targets = {ar.locate(dv).ident for dv in top_of_injective_summands(bq, b)}
    return sectional_path_exists(ar, sources, targets)


# --------------------------------------------------------------------------
# family recognition
# --------------------------------------------------------------------------

def _hanging_subtrees(bq: BoundQuiver, v: int, exclude: set[int]) -> list[set[int]]:
    """Underlying components hanging off v, ignoring neighbors in exclude."""
    q = bq.quiver
    neighbors = set()
    for arr in q.arrows_from(v):
        neighbors.add(arr.target)
    for arr in q.arrows_into(v):
        neighbors.add(arr.source)
    out = []
    for w in sorted(neighbors - exclude):
        comp = _component_without(q, w, v)
        out.append(comp)
    return out


def _component_without(q, start, blocked):
    adj = {u: set() for u in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w != blocked and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _is_end_attached_path(bq: BoundQuiver, subtree: set[int], attach_neighbor: int) -> bool:
    """Is the hanging subtree a path entered at one of its endpoints?"""
    q = bq.quiver
    degrees = {v: 0 for v in subtree}
    for a in q.arrows:
        if a.source in subtree and a.target in subtree:
            degrees[a.source] += 1
            degrees[a.target] += 1
    if any(d > 2 for d in degrees.values()):
        return False
    return degrees[attach_neighbor] <= 1


def family_match(bq: BoundQuiver) -> Optional[str]:
    """Which published always-applicable family the shape matches, if any.

    Tags: Ejemplos1..4 (core of type A), InterDn1/2 (pendant vertex deep in
    the relation, m >= 4), CoreE6 (core of type E6, m >= 3)."""
    rel = _single_zero_relation(bq)
    q = bq.quiver
    walk = path_walk(rel.path)
    m = len(walk)
    rv = [q.arrow(walk[0]).source]
    for name in walk:
        rv.append(q.arrow(name).target)

    on_path = set(rv)
    interior_branches = {}
    for i in range(1, m):
        subs = _hanging_subtrees(bq, rv[i], exclude={rv[i - 1], rv[i + 1]})
        if subs:
            interior_branches[i] = subs

    if not interior_branches:
        return "Ejemplos1"

    def single_pendant(i):
        return (
            list(interior_branches) == [i]
            and len(interior_branches[i]) == 1
            and len(interior_branches[i][0]) == 1
        )

    def single_path_branch(i):
        if list(interior_branches) != [i] or len(interior_branches[i]) != 1:
            return False
        subtree = interior_branches[i][0]
        neigh = _branch_neighbor(bq, rv[i], subtree)
        return _is_end_attached_path(bq, subtree, neigh)

    ends_bare = not _hanging_subtrees(bq, rv[0], exclude={rv[1]}) and not _hanging_subtrees(
        bq, rv[m], exclude={rv[m - 1]}
    )
    if (
        m >= 3
        and ends_bare
        and sorted(interior_branches) == [1, m - 1]
        and all(len(subs) == 1 and len(subs[0]) == 1 for subs in interior_branches.values())
    ):
        return "Ejemplos4"
    if m >= 4 and single_pendant(2):
        return "InterDn1"
    if m >= 4 and single_pendant(m - 2):
        return "InterDn2"
    if single_path_branch(1):
        return "Ejemplos2"
    if single_path_branch(m - 1):
        return "Ejemplos3"
    if m >= 3 and dynkin_type(pullback_split(bq).core.quiver) == ("E", 6):
        return "CoreE6"
    return None


def _branch_neighbor(bq: BoundQuiver, v: int, subtree: set[int]) -> int:
    q = bq.quiver
    for a in q.arrows_from(v):
        if a.target in subtree:
            return a.target
    for a in q.arrows_into(v):
        if a.source in subtree:
            return a.source
    raise ValueError("subtree does not touch v")


# --------------------------------------------------------------------------
# index fragments
# --------------------------------------------------------------------------

@dataclass
class PullbackIndex:
    value: int
    part_values: dict[str, int]
    part_types: dict[str, Optional[tuple[str, int]]]
    applicable: bool
    family: Optional[str]
    sectional: bool
    split: PullbackSplit


def _part_index(part: BoundQuiver, cap: int) -> tuple[int, Optional[tuple[str, int]]]:
    dk = dynkin_type(part.quiver) if not part.relations else None
    if dk is not None:
        return hereditary_index(dk), dk
    return nilpotency_knit(part, cap).value, dk


def pullback_index(bq: BoundQuiver, cap: int = DEFAULT_CAP,
                   ar: Optional[ARQuiver] = None) -> PullbackIndex:
    """r(a1) + r(a2) - r(core), valid when the middle subcategory is
    nonempty; otherwise FormulaInapplicable carries both the naive value
    and the knitting fallback."""
    split = pullback_split(bq)
    r1, t1 = _part_index(split.a1, cap)
    r2, t2 = _part_index(split.a2, cap)
    rc, tc = _part_index(split.core, cap)
    naive = r1 + r2 - rc
    if ar is None:
        ar = knit(bq, cap)
    family = family_match(bq)
    sect = sectional_criterion(bq, split, ar)
    parts = {"a1": r1, "a2": r2, "core": rc}
    types = {"a1": t1, "a2": t2, "core": tc}
    if b_nonempty(bq, split, ar):
        return PullbackIndex(naive, parts, types, True, family, sect, split)
    fallback = nilpotency_knit(bq, cap, ar=ar).value
    exc = FormulaInapplicable(
        f"middle subcategory empty; naive formula value {naive}, true index {fallback}",
        naive_value=naive,
        fallback_value=fallback,
    )
    exc.parts = parts
    exc.family = family
    exc.sectional = sect
    raise exc


@dataclass
class ToupieIndex:
    value: int
    branch_lengths: tuple[int, ...]
    vertex: int


def toupie_index(bq: BoundQuiver) -> ToupieIndex:
    """Two branches: n1 + 2 n2 + 2 (n1 <= n2).  Three branches: twice the
    index of the star left after deleting the source, minus one."""
    a, b, branches = commutative_toupie_shape(bq)
    ns = tuple(sorted(len(br) for br in branches))
    vertex = toupie_branch_vertex(bq).vertices[0]
    if len(branches) > 3:
        raise RepresentationInfinite("a commutative toupie with more than three branches")
    if len(branches) == 3:
        if ns[0] >= 2:
            raise RepresentationInfinite(
                "three-branch commutative toupie with every branch of interior length >= 2"
            )
        star = full_subquiver(bq, set(bq.quiver.vertices) - {a})
        dk = dynkin_type(star.quiver)
        if dk is None:
            raise RepresentationInfinite("branch star is not of Dynkin type")
        return ToupieIndex(2 * hereditary_index(dk) - 1, ns, vertex)
    n1, n2 = ns
    return ToupieIndex(n1 + 2 * n2 + 2, ns, vertex)


@dataclass
class GluedIndex:
    value: int
    blocks: list[dict]


def _relation_span_positions(positions: dict[int, int], rv: list[int]) -> tuple[int, int]:
    return positions[rv[0]], positions[rv[-1]]


def glued_index(bq: BoundQuiver, cap: int = DEFAULT_CAP) -> GluedIndex:
    """Maximum of the per-block indices for trees glued from single-relation
    blocks along a spine of non-overlapped zero-relations."""
    zeros = bq.zero_relations()
    if len(zeros) < 2 or not bq.is_monomial() or not underlying_tree(bq.quiver):
        raise ShapeMismatch("glued formula needs a monomial tree with >= 2 zero-relations")
    if overlap_report(bq).pairs:
        raise OverlappedRelations("glued formula needs pairwise non-overlapped relations")

    q = bq.quiver
    rel_vertices = []
    for rel in zeros:
        walk = path_walk(rel.path)
        rv = [q.arrow(walk[0]).source] + [q.arrow(name).target for name in walk]
        rel_vertices.append(rv)

    spine = _spanning_path({v for rv in rel_vertices for v in rv}, q)
    if spine is None:
        raise ShapeMismatch("relation zones do not lie on a single spine path")
    positions = {v: i for i, v in enumerate(spine)}

    spans = [_relation_span_positions(positions, rv) for rv in rel_vertices]
    if all(s < e for s, e in spans):
        pass
    elif all(s > e for s, e in spans):
        spine.reverse()
        positions = {v: i for i, v in enumerate(spine)}
        spans = [_relation_span_positions(positions, rv) for rv in rel_vertices]
    else:
        raise ShapeMismatch("relations are not consistently oriented along the spine")

    order = sorted(range(len(zeros)), key=lambda i: spans[i][0])
    for i, j in zip(order, order[1:]):
        if spans[i][1] > spans[j][0]:
            raise ShapeMismatch("relation zones interleave along the spine")

    blocks = []
    value = None
    for pos, i in enumerate(order):
        drops = []
        if pos > 0:
            prev_walk = path_walk(zeros[order[pos - 1]].path)
            drops.append(prev_walk[0])  # first arrow of the previous relation
        if pos < len(order) - 1:
            next_walk = path_walk(zeros[order[pos + 1]].path)
            drops.append(next_walk[-1])  # last arrow of the next relation
        verts = component_vertices(q, rel_vertices[i][0], dropped_arrows=drops)
        block = full_subquiver(bq, verts, dropped_arrows=drops)
        if block.zero_relations() != (zeros[i],):
            raise ShapeMismatch("block does not isolate exactly its own relation")
        entry = {"vertices": block.quiver.vertices}
        try:
            frag = pullback_index(block, cap)
            entry["value"] = frag.value
            entry["method"] = "pullback"
        except FormulaInapplicable as exc:
            entry["value"] = exc.fallback_value
            entry["method"] = "knit-fallback"
            entry["naive_value"] = exc.naive_value
        blocks.append(entry)
        value = entry["value"] if value is None else max(value, entry["value"])
    return GluedIndex(value, blocks)


def _spanning_path(targets: set[int], q) -> Optional[list[int]]:
    """Vertices of the minimal subtree spanning `targets`, as a path, or
    None when that subtree is not a path."""
    adj = {v: set() for v in q.vertices}
    for a in q.arrows:
        adj[a.source].add(a.target)
        adj[a.target].add(a.source)
    keep = {v: set(ws) for v, ws in adj.items()}
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            if v not in targets and len(keep[v]) <= 1:
                for w in keep[v]:
                    keep[w].discard(v)
                del keep[v]
                changed = True
    if not keep:
        return None
    degrees = {v: len(ws) for v, ws in keep.items()}
    if any(d > 2 for d in degrees.values()):
        return None
    ends = sorted(v for v, d in degrees.items() if d <= 1)
    if len(keep) == 1:
        return list(keep)
    start = ends[0]
    path = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in keep[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        path.append(cur)
    return path if len(path) == len(keep) else None


# --------------------------------------------------------------------------
# the method router
# --------------------------------------------------------------------------

POLICIES = ("auto", "string", "knit", "formula", "all")


@dataclass
class MethodResult:
    name: str
    status: str  # "ok" | "inapplicable" | "error"
    value: Optional[int] = None
    error: Optional[str] = None
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status}
        if self.value is not None:
            out["value"] = self.value
        if self.error is not None:
            out["error"] = self.error
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class IndexReport:
    policy: str
    r_value: Optional[int]
    methods: list[MethodResult]
    agreement: Optional[bool]
    per_vertex: dict[int, int] = field(default_factory=dict)
    vertices_used: tuple[int, ...] = ()

    SCHEMA = "radindex.report/1"

    def method(self, name: str) -> Optional[MethodResult]:
        for m in self.methods:
            if m.name == name:
                return m
        return None

    def to_dict(self) -> dict:
        return {
            "schema": self.SCHEMA,
            "policy": self.policy,
            "r": self.r_value,
            "agreement": self.agreement,
            "vertices_used": list(self.vertices_used),
            "per_vertex_r": {str(v): r for v, r in sorted(self.per_vertex.items())},
            "methods": [m.to_dict() for m in self.methods],
        }


def _dynkin_str(dk) -> Optional[str]:
    return None if dk is None else f"{dk[0]}{dk[1]}"


def _run_hereditary(bq, cap):
    dk = classify(bq).dynkin
    if dk is None:
        return MethodResult(
            "hereditary_table", "error",
            error="hereditary but not of Dynkin type: representation-infinite",
        )
    return MethodResult(
        "hereditary_table", "ok", hereditary_index(dk), detail={"dynkin": _dynkin_str(dk)}
    )


def _run_toupie(bq, cap):
    try:
        frag = toupie_index(bq)
    except RadindexError as exc:
        return MethodResult("toupie_formula", "error", error=str(exc))
    return MethodResult(
        "toupie_formula", "ok", frag.value,
        detail={"branch_lengths": list(frag.branch_lengths), "vertex": frag.vertex},
    )


def _run_pullback(bq, cap, ar_box):
    try:
        if ar_box.get("ar") is None:
            ar_box["ar"] = knit(bq, cap)
        frag = pullback_index(bq, cap, ar=ar_box["ar"])
    except FormulaInapplicable as exc:
        return MethodResult(
            "pullback_formula", "inapplicable", error=str(exc),
            detail={
                "naive_value": exc.naive_value,
                "fallback_value": exc.fallback_value,
                "b_nonempty": False,
                "parts": getattr(exc, "parts", {}),
                "family": getattr(exc, "family", None),
                "sectional": getattr(exc, "sectional", None),
            },
        )
    except RadindexError as exc:
        return MethodResult("pullback_formula", "error", error=str(exc))
    return MethodResult(
        "pullback_formula", "ok", frag.value,
        detail={
            "parts": frag.part_values,
            "part_types": {k: _dynkin_str(t) for k, t in frag.part_types.items()},
            "b_nonempty": True,
            "family": frag.family,
            "sectional": frag.sectional,
        },
    )


def _run_glued(bq, cap):
    try:
        frag = glued_index(bq, cap)
    except RadindexError as exc:
        return MethodResult("glued_formula", "error", error=str(exc))
    return MethodResult(
        "glued_formula", "ok", frag.value,
        detail={"blocks": [
            {k: (list(v) if isinstance(v, tuple) else v) for k, v in b.items()}
            for b in frag.blocks
        ]},
    )


def _run_string(bq, cap):
    try:
        frag = nilpotency_string(bq)
    except RadindexError as exc:
        return MethodResult("string_fans", "error", error=str(exc))
    return MethodResult(
        "string_fans", "ok", frag.value,
        detail={
            "per_vertex": {str(v): r for v, r in sorted(frag.per_vertex.items())},
            "vertices_used": list(frag.vertices_used),
        },
    )


def _run_knit(bq, cap, ar_box):
    try:
        if ar_box.get("ar") is None:
            ar_box["ar"] = knit(bq, cap)
        frag = nilpotency_knit(bq, cap, ar=ar_box["ar"])
    except RadindexError as exc:
        return MethodResult("knit", "error", error=str(exc))
    return MethodResult(
        "knit", "ok", frag.value,
        detail={
            "per_vertex": {str(v): r for v, r in sorted(frag.per_vertex.items())},
            "vertices_used": list(frag.vertices_used),
            "nodes": frag.ar.node_count(),
        },
    )


def _applicable_methods(bq):
    cls = classify(bq)
    zeros = bq.zero_relations()
    methods = []
    if cls.is_hereditary:
        methods.append("hereditary_table")
    if cls.is_toupie and bq.relations and all(r.kind == COMM for r in bq.relations):
        methods.append("toupie_formula")
    if cls.is_monomial and cls.is_tree and len(zeros) == 1:
        methods.append("pullback_formula")
    if cls.is_monomial and cls.is_tree and len(zeros) >= 2:
        methods.append("glued_formula")
    if cls.is_string and zeros:
        methods.append("string_fans")
    methods.append("knit")
    return methods


def route(bq: BoundQuiver, policy: str = "auto", cap: int = DEFAULT_CAP) -> IndexReport:
    """Dispatch over the implemented methods.

    auto stops at the first successful method (an inapplicable pullback is
    recorded and falls through); all runs every applicable method and
    records agreement."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    runners = {
        "hereditary_table": _run_hereditary,
        "toupie_formula": _run_toupie,
        "glued_formula": _run_glued,
        "string_fans": _run_string,
    }
    ar_box: dict = {}
    applicable = _applicable_methods(bq)
    results: list[MethodResult] = []

    def run(name: str) -> MethodResult:
        if name == "pullback_formula":
            res = _run_pullback(bq, cap, ar_box)
        elif name == "knit":
            res = _run_knit(bq, cap, ar_box)
        else:
            res = runners[name](bq, cap)
        results.append(res)
        return res

    if policy == "auto":
        chosen = None
        for name in applicable:
            res = run(name)
            if res.status == "ok":
                chosen = res
                break
        value = chosen.value if chosen else None
    elif policy == "all":
        for name in applicable:
            run(name)
        value = None
        knit_res = next((r for r in results if r.name == "knit" and r.status == "ok"), None)
        ok = [r for r in results if r.status == "ok"]
        if knit_res:
            value = knit_res.value
        elif ok:
            value = ok[0].value
    elif policy == "knit":
        res = run("knit")
        value = res.value
    elif policy == "string":
        res = run("string_fans")
        value = res.value
    else:  # formula
        value = None
        for name in applicable:
            if name in ("string_fans", "knit"):
                continue
            res = run(name)
            if res.status == "ok":
                value = res.value
                break

    ok_values = {r.value for r in results if r.status == "ok"}
    agreement = (len(ok_values) == 1) if len([r for r in results if r.status == "ok"]) >= 2 else None

    per_vertex = {}
    used: tuple[int, ...] = ()
    for r in results:
        if r.status == "ok" and "per_vertex" in r.detail:
            per_vertex = {int(v): n for v, n in r.detail["per_vertex"].items()}
            used = tuple(r.detail.get("vertices_used", ()))
            break

    report = IndexReport(policy, value, results, agreement, per_vertex, used)
    if value is None:
        exc = Unsupported(_unsupported_message(report))
        exc.report = report
        raise exc
    return report


def _unsupported_message(report: IndexReport) -> str:
    parts = [f"{m.name}: {m.error or m.status}" for m in report.methods]
    return "no method produced an index (" + "; ".join(parts) + ")"
