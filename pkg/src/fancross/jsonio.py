"""JSON wire formats for all package value types.

The formats are stable: keys are fixed, lists are emitted in deterministic
order, and loading is strict (malformed documents raise ``ValueError``).
"""

from __future__ import annotations

from typing import Any, Mapping

from .cluster import Certificate
from .drawing import Drawing, SubdivisionPlan
from .graphs import ColoredGraph, ColorLabel, Fan, Graph
from .minors import MinorModel
from .synth import RegionTag, SynthResult
from .transduce import TransductionFormula, TransductionOutput


# ===== Graph =====


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {
        "vertices": list(g.vertices),
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_json(obj: Mapping[str, Any]) -> Graph:
    try:
        return Graph.make(obj["vertices"], obj["edges"])
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"bad graph document: {exc}") from exc


# ===== ColoredGraph =====


def colored_to_json(c: ColoredGraph) -> dict[str, Any]:
    out = graph_to_json(c.graph)
    out["colors"] = {
        str(v): sorted(str(l) for l in c.colors[v]) for v in sorted(c.colors)
    }
    return out


def colored_from_json(obj: Mapping[str, Any]) -> ColoredGraph:
    g = graph_from_json(obj)
    try:
        colors = {
            int(v): frozenset(ColorLabel.parse(t) for t in labels)
            for v, labels in obj.get("colors", {}).items()
        }
    except (TypeError, AttributeError) as exc:
        raise ValueError(f"bad colors document: {exc}") from exc
    return ColoredGraph(g, colors)


# ===== Drawing =====


def drawing_to_json(d: Drawing) -> dict[str, Any]:
    return {
        "base": graph_to_json(d.base),
        "plan": graph_to_json(d.plan),
        "rotation": {str(v): list(d.rotation[v]) for v in sorted(d.rotation)},
        "kind": {str(v): d.kind[v] for v in sorted(d.kind)},
        "trace": {str(e): list(d.trace[e]) for e in sorted(d.trace)},
        "outer": d.outer,
    }


def drawing_from_json(obj: Mapping[str, Any]) -> Drawing:
    try:
        base = graph_from_json(obj["base"])
        plan = graph_from_json(obj["plan"])
        rotation = {int(v): tuple(r) for v, r in obj["rotation"].items()}
        kind = {int(v): str(k) for v, k in obj["kind"].items()}
        trace = {int(e): tuple(t) for e, t in obj["trace"].items()}
        outer = int(obj["outer"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad drawing document: {exc}") from exc
    return Drawing(base, plan, rotation, kind, trace, outer)


# ===== Certificate =====


def certificate_to_json(cert: Certificate, base: Graph) -> dict[str, Any]:
    """Fans are serialized by edge id, so the base graph is required."""
    covers = {
        str(cid): [
            {
                "center": f.center,
                "edges": sorted(base.edge_id(u, v) for u, v in f.edges),
            }
            for f in fans
        ]
        for cid, fans in sorted(cert.covers.items())
    }
    assignment = [
        {"edge": e, "piece": p, "center": c}
        for (e, p), c in sorted(cert.assignment.items())
    ]
    return {
        "k": cert.k,
        "ell": cert.ell,
        "cuts": {str(e): list(g) for e, g in sorted(cert.plan.cuts.items())},
        "covers": covers,
        "assignment": assignment,
    }


def certificate_from_json(obj: Mapping[str, Any], base: Graph) -> Certificate:
    try:
        cuts = {int(e): tuple(g) for e, g in obj.get("cuts", {}).items()}
        covers = {
            int(cid): tuple(
                Fan(f["center"], tuple(base.edges[e] for e in f["edges"]))
                for f in fans
            )
            for cid, fans in obj.get("covers", {}).items()
        }
        assignment = {
            (a["edge"], a["piece"]): a["center"] for a in obj.get("assignment", [])
        }
        return Certificate(
            int(obj["k"]), int(obj["ell"]), SubdivisionPlan(cuts), covers, assignment
        )
    except (KeyError, TypeError, AttributeError, IndexError) as exc:
        raise ValueError(f"bad certificate document: {exc}") from exc


# ===== Minor models =====


def model_to_json(m: MinorModel) -> dict[str, Any]:
    return {
        "host": graph_to_json(m.host),
        "pattern": graph_to_json(m.pattern),
        "branch": {str(v): sorted(vs) for v, vs in sorted(m.branch.items())},
        "c": m.c,
        "d": m.d,
    }


def model_from_json(obj: Mapping[str, Any]) -> MinorModel:
    try:
        return MinorModel(
            graph_from_json(obj["host"]),
            graph_from_json(obj["pattern"]),
            {int(v): tuple(vs) for v, vs in obj.get("branch", {}).items()},
            int(obj["c"]),
            int(obj["d"]),
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad model document: {exc}") from exc


# ===== Transduction outputs =====


def transduction_to_json(t: TransductionOutput) -> dict[str, Any]:
    out = colored_to_json(t.colored)
    out["embed"] = {str(h): g for h, g in sorted(t.embed.items())}
    out["formula"] = {"k": t.formula.k, "mode": t.formula.mode}
    out["X"] = list(t.x)
    return out


def transduction_from_json(obj: Mapping[str, Any]) -> TransductionOutput:
    colored = colored_from_json(obj)
    try:
        embed = {int(h): int(g) for h, g in obj["embed"].items()}
        formula = TransductionFormula.for_mode(
            int(obj["formula"]["k"]), str(obj["formula"]["mode"])
        )
        x = tuple(sorted(int(v) for v in obj["X"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad transduction document: {exc}") from exc
    return TransductionOutput(colored, embed, formula, x)


# ===== Synthesis results =====


def synthresult_to_json(r: SynthResult) -> dict[str, Any]:
    return {
        "drawing": drawing_to_json(r.drawing),
        "cert": certificate_to_json(r.cert, r.drawing.base),
        "kPrime": r.kPrime,
        "tags": {
            str(pv): {"kind": t.kind, "ref": list(t.ref)}
            for pv, t in sorted(r.tags.items())
        },
        "routes": {str(e): list(p) for e, p in sorted(r.routes.items())},
    }


def synthresult_from_json(obj: Mapping[str, Any]) -> SynthResult:
    try:
        drawing = drawing_from_json(obj["drawing"])
        cert = certificate_from_json(obj["cert"], drawing.base)
        tags = {
            int(pv): RegionTag(str(t["kind"]), tuple(t["ref"]))
            for pv, t in obj.get("tags", {}).items()
        }
        routes = {int(e): tuple(p) for e, p in obj.get("routes", {}).items()}
        return SynthResult(drawing, cert, int(obj["kPrime"]), tags, routes)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad synthesis document: {exc}") from exc
