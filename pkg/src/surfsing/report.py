"""Analysis, scan and lemma reports as plain JSON-ready dicts.

Every exact quantity is serialized as an integer or ``"p/q"`` string so the
reports are lossless and diff-stable.  Human-readable text is rendered from
the same dicts.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

import numpy as np

from .bounds import BoundReport, evaluate_bounds, smoothing_data_for
from .exact import fraction_str
from .graphs import ResolutionGraph, link_first_betti, random_graph, serialize_resolution_graph
from .lattice import (
    Cycle,
    as_cycle,
    build_context,
    is_du_val,
    is_numerically_gorenstein,
    is_unimodular,
    square,
)
from .monomial import (
    MonomialIdeal,
    product_all,
    radial_containment_check,
    random_m_primary,
    verify_colength_lemma,
)
from .search import (
    arithmetic_genus,
    artin_cycle,
    conjecture_check,
    elkies_min_square,
    minimize_chi,
)

SCHEMA_FILES = {
    "analysis": "analysis.schema.json",
    "conjecture-scan": "conjecture_scan.schema.json",
    "monomial-verify": "monomial_verify.schema.json",
}


def num(x) -> str:
    return fraction_str(Fraction(x))


def cyc(c: Cycle) -> list[str]:
    return c.to_strings()


def graph_hash(g: ResolutionGraph) -> str:
    return hashlib.sha256(serialize_resolution_graph(g).encode()).hexdigest()


def graph_block(g: ResolutionGraph) -> dict:
    return {
        "hash": graph_hash(g),
        "vertices": [{"id": v.id, "self_intersection": v.self_intersection, "genus": v.genus}
                     for v in g.vertices],
        "edges": [list(e) for e in g.edges],
    }


@dataclass(frozen=True)
class AnalysisOptions:
    p_g: int | None = None
    e: int = 3
    gorenstein: bool = False
    nu: int | None = None
    mu: int | None = None
    zmax: Sequence | None = None
    t: int | None = None
    budget: int | None = None


def _bound_rows(report: BoundReport) -> list[dict]:
    rows = []
    for r in report.rows:
        rows.append({
            "id": r.id,
            "name": r.name,
            "inequality": r.inequality,
            "status": r.status,
            "lhs": None if r.lhs is None else num(r.lhs),
            "rhs": None if r.rhs is None else num(r.rhs),
            "margin": None if r.margin is None else num(r.margin),
            "assumptions_violated": list(r.assumptions_violated),
            "notes": list(r.notes),
        })
    return rows


def analyze(g: ResolutionGraph, opts: AnalysisOptions = AnalysisOptions()) -> dict:
    """Full pipeline on one graph.  Search budget overruns raise."""
    ctx = build_context(g)
    warnings = list(ctx.warnings)
    numgor = is_numerically_gorenstein(ctx)
    unimod = is_unimodular(ctx)

    mc = minimize_chi(ctx, opts.budget, require_complete=True)
    z_min = artin_cycle(ctx)
    cycles = {
        "z_min": cyc(z_min),
        "z_min_squared": num(square(ctx, z_min)),
        "min_chi": num(mc.optimum_value),
        "min_chi_minimizer": cyc(mc.canonical),
        "min_chi_complete": mc.complete,
        "p_a": num(arithmetic_genus(mc.optimum_value)),
    }

    elkies = None
    if unimod:
        el = elkies_min_square(ctx, opts.budget, require_complete=True)
        elkies = {"xi": cyc(el.xi), "xi_squared": num(el.xi_squared), "slack": num(el.slack)}
    conj = conjecture_check(ctx, opts.budget, require_complete=True)
    characteristic = {
        "elkies": elkies,
        "conjecture": {
            "xi": cyc(conj.xi),
            "xi_squared": num(conj.xi_squared),
            "z_min_squared": num(conj.z_min_squared),
            "margin": num(conj.margin),
            "holds": conj.holds,
        },
    }

    smoothing = None
    if opts.p_g is not None:
        epsilon = 1 if (opts.gorenstein or opts.e == 3) else 0
        nu_source = "user" if opts.nu is not None else None
        data = smoothing_data_for(ctx, opts.p_g, opts.e, epsilon, opts.nu, opts.mu, nu_source)
        z = None
        z_source = "proxy"
        if opts.zmax is not None:
            z = as_cycle(ctx, opts.zmax)
            z_source = "user"
        report = evaluate_bounds(ctx, data, mc.optimum_value, z=z, t=opts.t, z_source=z_source)
        warnings += [w for w in report.warnings if w not in warnings]
        inv = report.invariants
        smoothing = {
            "inputs": {
                "p_g": {"value": num(data.p_g), "source": "user"},
                "e": {"value": num(data.e), "source": "user"},
                "epsilon": {"value": num(data.epsilon), "source": "user"},
                "nu": {"value": None if data.nu is None else num(data.nu), "source": data.nu_source},
                "mu0": {"value": num(data.mu0), "source": "graph"},
                "k2_plus_s": {"value": num(data.k2_plus_s), "source": "graph"},
                "z": {"value": cyc(z if z is not None else z_min), "source": z_source},
            },
            "invariants": None if inv is None else {
                "mu": num(inv.mu),
                "sigma": num(inv.sigma),
                "mu_plus": num(inv.mu_plus),
                "mu_zero": num(inv.mu_zero),
                "mu_minus": num(inv.mu_minus),
            },
            "bounds": _bound_rows(report),
        }

    return {
        "kind": "analysis",
        "graph": graph_block(g),
        "lattice": {
            "s": ctx.s,
            "discriminant": num(ctx.discriminant),
            "unimodular": unimod,
            "z_k": cyc(ctx.z_k),
            "numerically_gorenstein": numgor,
            "du_val": numgor and is_du_val(ctx),
            "minimal": g.is_minimal,
            "b1": num(link_first_betti(g)),
            "k_squared": num(ctx.k_squared),
            "k2_plus_s": num(ctx.k2_plus_s),
        },
        "cycles": cycles,
        "characteristic": characteristic,
        "smoothing": smoothing,
        "warnings": warnings,
    }


# ---------------------------------------------------------------------------
# conjecture scan

@dataclass(frozen=True)
class ScanOptions:
    count: int
    max_vertices: int
    seed: int
    weight_range: tuple[int, int] = (-5, -1)
    genus_range: tuple[int, ...] = (0, 1)
    extra_edges: int = 0
    allow_non_minimal: bool = False
    budget: int | None = None


def scan_graph(opts: ScanOptions, index: int) -> ResolutionGraph:
    rng = np.random.default_rng([opts.seed, index])
    n = int(rng.integers(1, opts.max_vertices + 1))
    return random_graph(n, opts.weight_range, opts.genus_range, seed=[opts.seed, index, n],
                        extra_edges=opts.extra_edges, minimal=not opts.allow_non_minimal)


def conjecture_scan(opts: ScanOptions) -> dict:
    """Check the conjecture ``xi^2 + s >= Z_min^2`` on seeded random graphs."""
    if opts.count < 0 or opts.max_vertices < 1:
        raise ValueError("count must be >= 0 and max-vertices >= 1")
    results = []
    for i in range(opts.count):
        g = scan_graph(opts, i)
        ctx = build_context(g)
        res = conjecture_check(ctx, opts.budget, require_complete=True)
        results.append({
            "index": i,
            "hash": graph_hash(g),
            "graph": serialize_resolution_graph(g),
            "s": g.s,
            "xi": cyc(res.xi),
            "xi_squared": num(res.xi_squared),
            "z_min_squared": num(res.z_min_squared),
            "margin": num(res.margin),
            "holds": res.holds,
            "nodes": res.search.nodes_visited,
        })
    violations = [r["index"] for r in results if not r["holds"]]
    return {
        "kind": "conjecture-scan",
        "parameters": {
            "count": opts.count,
            "max_vertices": opts.max_vertices,
            "seed": opts.seed,
            "weight_range": list(opts.weight_range),
            "genus_range": list(opts.genus_range),
            "extra_edges": opts.extra_edges,
            "allow_non_minimal": opts.allow_non_minimal,
        },
        "checked": len(results),
        "violations": violations,
        "results": results,
    }


# ---------------------------------------------------------------------------
# monomial lemma

def lemma_entry(ideals: Sequence[MonomialIdeal], rays: int = 0, seed: int = 0) -> dict:
    check = verify_colength_lemma(ideals)
    entry = {
        "ideals": [[list(u) for u in a.generators] for a in ideals],
        "product": [list(u) for u in product_all(ideals).generators],
        "e": check.e,
        "d": check.d,
        "lhs": num(check.lhs),
        "rhs": num(check.rhs),
        "margin": num(check.margin),
        "holds": check.holds,
        "strict": check.strict,
        "radial": None,
    }
    if rays > 0:
        rep = radial_containment_check(ideals, rays, seed)
        entry["radial"] = {
            "samples": len(rep.samples),
            "contained": sum(s.contained for s in rep.samples),
            "holder": sum(s.holder_ok for s in rep.samples),
        }
    return entry


def random_lemma_instance(e: int, d: int, max_exp: int, seed: int, index: int,
                          density: float = 0.3) -> list[MonomialIdeal]:
    ss = np.random.SeedSequence([seed, index])
    return [random_m_primary(e, max_exp, density, seed=int(child.generate_state(1)[0]))
            for child in ss.spawn(d)]


def monomial_verify(instances: Sequence[Sequence[MonomialIdeal]], rays: int = 0, seed: int = 0,
                    parameters: dict | None = None) -> dict:
    entries = []
    for i, ideals in enumerate(instances):
        entry = lemma_entry(ideals, rays, seed + i)
        entry["index"] = i
        entries.append(entry)
    return {
        "kind": "monomial-verify",
        "parameters": parameters or {},
        "checked": len(entries),
        "holds": sum(e["holds"] for e in entries),
        "strict": sum(e["strict"] for e in entries),
        "results": entries,
    }


# ---------------------------------------------------------------------------
# output

def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def load_schema(kind: str) -> dict:
    text = resources.files("surfsing").joinpath("schemas", SCHEMA_FILES[kind]).read_text()
    return json.loads(text)


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` if the report does not match its schema."""
    import jsonschema

    jsonschema.validate(report, load_schema(report["kind"]))


def _vec(v) -> str:
    return "(" + ", ".join(v) + ")"


def render_analysis(r: dict) -> str:
    lat, cy, ch = r["lattice"], r["cycles"], r["characteristic"]
    out = [
        f"graph {r['graph']['hash'][:12]}  s = {lat['s']}  det = {lat['discriminant']}"
        f"  unimodular: {lat['unimodular']}",
        f"Z_K = {_vec(lat['z_k'])}  numerically Gorenstein: {lat['numerically_gorenstein']}"
        f"  Du Val: {lat['du_val']}",
        f"K^2 = {lat['k_squared']}  K^2+s = {lat['k2_plus_s']}  b_1 = {lat['b1']}",
        f"Z_min = {_vec(cy['z_min'])}  Z_min^2 = {cy['z_min_squared']}",
        f"min chi = {cy['min_chi']} at {_vec(cy['min_chi_minimizer'])}  p_a = {cy['p_a']}",
    ]
    if ch["elkies"]:
        el = ch["elkies"]
        out.append(f"Elkies: xi = {_vec(el['xi'])}  xi^2 = {el['xi_squared']}  slack = {el['slack']}")
    cj = ch["conjecture"]
    out.append(f"conjecture: xi = {_vec(cj['xi'])}  xi^2 = {cj['xi_squared']}"
               f"  Z_min^2 = {cj['z_min_squared']}  margin = {cj['margin']}"
               f"  {'holds' if cj['holds'] else 'VIOLATED'}")
    du = r["smoothing"]
    if du:
        ins = du["inputs"]
        out.append("inputs: " + "  ".join(
            f"{k} = {v['value'] if not isinstance(v['value'], list) else _vec(v['value'])} [{v['source']}]"
            for k, v in ins.items()))
        if du["invariants"]:
            iv = du["invariants"]
            out.append(f"mu = {iv['mu']}  sigma = {iv['sigma']}  (mu+, mu0, mu-) = "
                       f"({iv['mu_plus']}, {iv['mu_zero']}, {iv['mu_minus']})")
        for row in du["bounds"]:
            if row["status"] == "not applicable":
                why = "; ".join(row["assumptions_violated"])
                out.append(f"  {row['id']:<4} n/a    {row['inequality']}  [{why}]")
            else:
                out.append(f"  {row['id']:<4} {row['status']:<6} {row['lhs']} >= {row['rhs']}"
                           f"  margin {row['margin']}")
    for w in r["warnings"]:
        out.append(f"warning: {w}")
    return "\n".join(out) + "\n"


def render_scan(r: dict) -> str:
    out = [f"checked {r['checked']} graphs, {len(r['violations'])} violation(s)"]
    for i in r["violations"]:
        res = r["results"][i]
        out.append(f"  violation #{i}: xi^2 = {res['xi_squared']}, s = {res['s']},"
                   f" Z_min^2 = {res['z_min_squared']}, margin {res['margin']}")
        out += ["    " + ln for ln in res["graph"].splitlines()]
    return "\n".join(out) + "\n"


def render_monomial(r: dict) -> str:
    out = []
    for e in r["results"]:
        line = (f"#{e['index']}: e={e['e']} d={e['d']} lhs={e['lhs']} rhs={e['rhs']}"
                f" margin={e['margin']} {'strict' if e['strict'] else 'equality' if e['holds'] else 'FAILS'}")
        if e["radial"]:
            rad = e["radial"]
            line += f"  rays {rad['contained']}/{rad['samples']} contained, {rad['holder']}/{rad['samples']} Holder"
        out.append(line)
    out.append(f"{r['holds']}/{r['checked']} hold, {r['strict']} strict")
    return "\n".join(out) + "\n"
