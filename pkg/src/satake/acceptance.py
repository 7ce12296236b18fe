"""The acceptance suite, shared by ``satake verify`` and the test-suite.

Each criterion is a function of a :class:`Scope` returning a
:class:`CriterionResult`.  With no datum in scope the stated default
configuration is used; ``--datum``/``--max-height`` narrow or re-target the
datum-parametrized criteria.  Output carries no timings so that repeated runs
serialize byte-identically.
"""

from __future__ import annotations

import json
import logging
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .polys import IntPoly
from .rootdata import RootDatum, SUPPORTED_LABELS, build_root_datum, dominant_weights

ALL_MODULES = ("rootdata", "weyl", "klhecke", "repbuild", "principal", "grassview", "cli")

KOSTANT_EXPECTED = {
    "A1": [2],
    "A2": [2, 4],
    "A3": [2, 4, 6],
    "B2": [2, 6],
    "C2": [2, 6],
    "G2": [2, 10],
}


@dataclass
class Scope:
    datum: Optional[str] = None
    max_height: Optional[int] = None

    def labels(self, default: Sequence[str]) -> List[str]:
        if self.datum is None:
            return list(default)
        return [self.datum]

    def height(self, default: int) -> int:
        return default if self.max_height is None else self.max_height


@dataclass
class CriterionResult:
    cid: int
    title: str
    modules: Tuple[str, ...]
    status: str = "PASS"          # PASS | FAIL | N/A
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    facts: Dict[str, object] = field(default_factory=dict)

    def check(self, ok: bool, what: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(what)
            self.status = "FAIL"
        return ok

    def to_json(self) -> dict:
        return {"id": self.cid, "title": self.title, "modules": list(self.modules),
                "status": self.status, "checks": self.checks,
                "failures": self.failures[:20], "facts": self.facts}


# --------------------------------------------------------------------------
# helpers

def irreps_up_to_dim(datum: RootDatum, max_dim: int) -> List[Tuple[int, ...]]:
    """Dominant weights with Weyl dimension <= max_dim (dimension grows in each coordinate)."""
    from .repbuild import weyl_dimension

    seen, out, stack = set(), [], [(0,) * datum.rank]
    while stack:
        lam = stack.pop()
        if lam in seen:
            continue
        seen.add(lam)
        if weyl_dimension(datum, lam) > max_dim:
            continue
        out.append(lam)
        for i in range(datum.rank):
            stack.append(tuple(v + (j == i) for j, v in enumerate(lam)))
    return sorted(out, key=lambda l: (sum(l), l))


def _pairs_below(datum: RootDatum, max_h: int):
    from .grassview import closure_leq

    weights = dominant_weights(datum, max_h)
    for lam in weights:
        for mu in weights:
            if closure_leq(datum, mu, lam):
                yield lam, mu


# --------------------------------------------------------------------------
# criteria

def crit_rank_one(scope: Scope, ctx: dict) -> CriterionResult:
    from .grassview import verify_qkl_theorem
    from .klhecke import kl_engine
    from .principal import brylinski_poincare
    from .repbuild import build_irrep
    from .weyl import affine_weyl_group

    res = CriterionResult(1, "rank-1 closed form (A1, coroot lattice)",
                          ("rootdata", "weyl", "klhecke", "principal", "grassview"))
    if scope.datum not in (None, "A1"):
        res.status = "N/A"
        return res
    d = build_root_datum("A1", "coroot")
    g = affine_weyl_group(d)
    eng = kl_engine(d)
    top = scope.height(8)
    for lam in range(0, top + 1, 2):
        w = g.max_coset_rep((lam,))
        res.check(w.length == lam + 1, f"l(w({lam})) = {w.length}")
        bad = [g.serialize(x) for x in g.lower_ideal(w) if eng.P(x, w) != 1]
        res.check(not bad, f"nontrivial KL polynomial below w({lam}): {bad[:3]}")
        irrep = build_irrep(d, (lam,))
        for mu in range(lam % 2, lam + 1, 2):
            p = brylinski_poincare(irrep, (mu,)).poincare
            res.check(p == IntPoly.monomial(lam - mu), f"Brylinski ({lam},{mu}) = {p.pretty()}")
            rep = verify_qkl_theorem(d, (lam,), (mu,))
            ctx.setdefault("qkl", []).append(rep)
            res.check(rep.passed, f"qKL ({lam},{mu}) failed: {rep.to_json()['verdicts']}")
    res.facts = {"max_lambda": top}
    return res


def crit_triple_agreement(scope: Scope, ctx: dict) -> CriterionResult:
    from .grassview import verify_qkl_theorem

    res = CriterionResult(2, "three-route q-multiplicity agreement",
                          ("principal", "grassview", "klhecke", "weyl", "repbuild"))
    facts = {}
    for label in scope.labels(["A2"]):
        d = build_root_datum(label)
        pairs = 0
        for lam, mu in _pairs_below(d, scope.height(8)):
            rep = verify_qkl_theorem(d, lam, mu)
            ctx.setdefault("qkl", []).append(rep)
            pairs += 1
            res.check(rep.passed, f"{label} {lam} {mu}: {rep.to_json()['polynomials']}")
        facts[label] = {"pairs": pairs, "max_height": scope.height(8)}
        if label == "A2":
            anchor = verify_qkl_theorem(d, (1, 1), (0, 0))
            want = IntPoly({2: 1, 4: 1})
            res.check(anchor.passed and anchor.brylinski == want,
                      f"anchor (theta, 0) = {anchor.brylinski.pretty()}")
            facts["anchor"] = anchor.brylinski.to_json()
            facts["convention_tag"] = anchor.convention
    res.facts = facts
    return res


def crit_structure_constants(scope: Scope, ctx: dict) -> CriterionResult:
    from .klhecke import satake_structure_check

    res = CriterionResult(3, "Hecke structure constants = tensor multiplicities",
                          ("klhecke", "repbuild", "weyl"))
    if scope.datum not in (None, "A1"):
        res.status = "N/A"
        return res
    d = build_root_datum("A1", "coroot")
    table = {}
    for lam in (2, 4):
        for mu in (2, 4):
            rep = satake_structure_check(d, (lam,), (mu,))
            table[f"{lam}x{mu}"] = {str(nu[0]): p.coeff(0) for nu, p in sorted(rep.hecke_constants.items())}
            res.check(rep.verdict == "PASS", f"({lam},{mu}): {rep.to_json()}")
    res.check(table["2x2"] == {"0": 1, "2": 1, "4": 1}, f"3x3 gave {table['2x2']}")
    res.facts = {"constants": table}
    return res


def crit_kostant(scope: Scope, ctx: dict) -> CriterionResult:
    from .principal import centralizer_basis, centralizer_is_abelian, kostant_identity

    res = CriterionResult(4, "centralizer eigenvalues = twice the exponents", ("principal", "rootdata"))
    facts = {}
    for label in scope.labels(["A1", "A2", "C2", "G2"]):
        d = build_root_datum(label)
        cb = centralizer_basis(d)
        eig = sorted(cb.eigenvalues)
        facts[label] = eig
        res.check(eig == KOSTANT_EXPECTED[label], f"{label}: {eig}")
        res.check(kostant_identity(d)[2], f"{label}: invariant degrees disagree")
        res.check(centralizer_is_abelian(d), f"{label}: centralizer not abelian")
    res.facts = facts
    return res


def crit_lefschetz_parity(scope: Scope, ctx: dict) -> CriterionResult:
    from .principal import hard_lefschetz, parity_holds
    from .repbuild import build_irrep

    res = CriterionResult(5, "hard Lefschetz and parity for irreps of dim <= 300",
                          ("principal", "repbuild", "rootdata"))
    facts = {}
    for label in scope.labels(["A1", "A2", "C2", "G2"]):
        d = build_root_datum(label)
        lams = irreps_up_to_dim(d, 300)
        for lam in lams:
            irrep = build_irrep(d, lam)
            res.check(hard_lefschetz(irrep), f"{label} {lam}: hard Lefschetz")
            res.check(parity_holds(irrep), f"{label} {lam}: parity")
        facts[label] = len(lams)
    res.facts = {"irreps": facts}
    return res


def crit_minuscule(scope: Scope, ctx: dict) -> CriterionResult:
    from .principal import minuscule_cyclicity_check

    res = CriterionResult(6, "minuscule modules are cyclic over U(a)", ("principal", "grassview"))
    facts = {}
    for label in scope.labels(["A1", "A2"]):
        d = build_root_datum(label)
        for tag in d.component_group:
            if not any(tag):
                continue
            rep = minuscule_cyclicity_check(d, tag)
            facts[f"{label} {','.join(map(str, tag))}"] = list(rep.mu_c)
            res.check(rep.cyclic, f"{label} {tag}: span {rep.span_dim} of {rep.dim}")
    res.facts = facts
    return res


def crit_generalized_exponents(scope: Scope, ctx: dict) -> CriterionResult:
    from .principal import a_invariants
    from .repbuild import build_irrep

    res = CriterionResult(7, "a-invariants and generalized exponents", ("principal", "grassview"))
    facts = {}
    for label in scope.labels(["A2"]):
        d = build_root_datum(label)
        if label == "A2" and scope.datum is None:
            tags = [d.component((1, 0)), d.component((0, 0))]
        else:
            tags = list(d.component_group)
        for lam in dominant_weights(d, scope.height(6)):
            if d.component(lam) not in tags:
                continue
            rep = a_invariants(build_irrep(d, lam))
            facts[f"{label} {','.join(map(str, lam))}"] = rep.exponents
            res.check(rep.certified and rep.dim_invariants == rep.dim_weight_space,
                      f"{label} {lam}: {rep.to_json()}")
    res.facts = facts
    return res


def crit_consistency(scope: Scope, ctx: dict) -> CriterionResult:
    from .repbuild import (built_irreps, char_product, character, freudenthal_multiplicity,
                           tensor_decompose, weyl_dimension)

    res = CriterionResult(8, "consistency web", ("repbuild", "rootdata", "grassview"))
    built = sorted(built_irreps(), key=lambda ir: (ir.datum.label, ir.datum.lattice, ir.highest_weight))
    for ir in built:
        d, lam = ir.datum, ir.highest_weight
        res.check(weyl_dimension(d, lam) == ir.dim == sum(character(d, lam).values()),
                  f"{d.label} {lam}: dimension")
        for mu, idx in ir.weight_spaces.items():
            if not res.check(len(idx) == freudenthal_multiplicity(d, lam, mu),
                             f"{d.label} {lam} {mu}: weight multiplicity"):
                break
    # ring homomorphism on pairs of small built modules
    small: Dict[str, List] = {}
    for ir in built:
        if ir.dim <= 30:
            small.setdefault(ir.datum.label, []).append(ir.highest_weight)
    pairs = 0
    for label, lams in sorted(small.items()):
        d = build_root_datum(label)
        for i, a in enumerate(lams):
            for b in lams[i:]:
                lhs = char_product(character(d, a), character(d, b))
                rhs: Dict = {}
                for nu, m in tensor_decompose(d, a, b).items():
                    for wt, c in character(d, nu).items():
                        rhs[wt] = rhs.get(wt, 0) + m * c
                pairs += 1
                res.check(lhs == rhs, f"{label} {a} x {b}: character product")
    for rep in ctx.get("qkl", []):
        res.check(rep.brylinski(1) == rep.lusztig(1) == rep.kl_derived(1) == rep.multiplicity,
                  f"{rep.datum} {rep.lam} {rep.mu}: q=1 specialization")
    res.facts = {"irreps": len(built), "product_pairs": pairs, "qkl_specializations": len(ctx.get("qkl", []))}
    return res


def crit_graded_hom(scope: Scope, ctx: dict) -> CriterionResult:
    from .principal import graded_hom_over_a
    from .grassview import minuscule_weight
    from .repbuild import freudenthal_multiplicity, tensor_decompose

    res = CriterionResult(9, "graded Hom over the centralizer", ("principal", "repbuild"))
    facts = {}
    cases = {"A2": [((1, 1), (1, 1), 10), ((0, 0), (0, 0), 1)],
             "A1": [((0,), (2,), 1), ((2,), (2,), 3)]}
    for label in scope.labels(["A2"]):
        d = build_root_datum(label)
        for lam, mu, want in cases.get(label, [((0,) * d.rank, (0,) * d.rank, 1)]):
            graded = graded_hom_over_a(d, lam, mu)
            total = sum(graded.values())
            # oracle: sum over constituents of V_lam^* (x) V_mu of dim V_nu(mu_C)
            from .principal import dual_weight
            oracle = sum(m * freudenthal_multiplicity(d, nu, minuscule_weight(d, nu))
                         for nu, m in tensor_decompose(d, dual_weight(d, lam), mu).items())
            facts[f"{label} {lam} {mu}"] = {str(k): v for k, v in sorted(graded.items())}
            res.check(total == want == oracle, f"{label} {lam} {mu}: total {total}, oracle {oracle}")
    res.facts = facts
    return res


def crit_cache(scope: Scope, ctx: dict) -> CriterionResult:
    from . import cache
    from .klhecke import reset_engines

    res = CriterionResult(10, "determinism and cache fault tolerance", ("cli", "klhecke", "weyl"))
    kl_criteria = (crit_rank_one, crit_triple_agreement, crit_structure_constants)

    def run(directory) -> Tuple[str, int, int]:
        reset_engines()
        stores = attach_all(directory)
        out = [c(scope, {}).to_json() for c in kl_criteria]
        blob = json.dumps(out, sort_keys=True, separators=(",", ":"))
        loaded = sum(len(s) for s in stores)
        warnings = sum(len(s.warnings) for s in stores)
        return blob, loaded, warnings

    # the injected faults below warn by design; keep them off the console
    cache_log = logging.getLogger(cache.__name__)
    saved = cache_log.level
    cache_log.setLevel(logging.ERROR)
    try:
        _cache_round_trips(res, run)
    finally:
        cache_log.setLevel(saved)
    reset_engines()
    return res


def _cache_round_trips(res: CriterionResult, run) -> None:
    from . import cache

    with tempfile.TemporaryDirectory() as tmp:
        cold, before, _ = run(tmp)
        warm, after, _ = run(tmp)
        res.check(cold == warm, "cold and warm cache runs differ")
        files = sorted(Path(tmp).glob("*.jsonl"))
        res.check(bool(files) and after >= before, "cache was not written")
        # fault injection: corrupt one record in the middle of the largest file
        # and cut the final record in half
        target = max(files, key=lambda p: p.stat().st_size)
        lines = target.read_bytes().split(b"\n")
        mid = len(lines) // 2
        lines[mid] = lines[mid].replace(b'"p":{', b'"p":{"99":7,', 1)
        data = b"\n".join(lines)
        target.write_bytes(data[: len(data) - 20])
        injected, _, warnings = run(tmp)
        res.check(warnings == 2, f"expected 2 cache warnings, saw {warnings}")
        res.check(injected == cold, "verdicts changed after cache fault injection")
        # an unknown format version is refused
        bad = Path(tmp) / "future" / target.name
        bad.parent.mkdir()
        bad.write_text('{"format":"%s","version":99}\n' % cache.FORMAT)
        try:
            cache.KLCache(bad)
            refused = False
        except cache.CacheError:
            refused = True
        res.check(refused, "unknown cache version accepted")
    res.facts = {"files": len(files)}


def attach_all(directory=None) -> list:
    """Attach on-disk caches to fresh engines for every supported datum."""
    from .cache import attach_cache

    stores = []
    for label in SUPPORTED_LABELS:
        for lattice in ("coweight", "coroot"):
            _, store = attach_cache(build_root_datum(label, lattice), directory)
            stores.append(store)
    return stores


CRITERIA: Tuple[Callable[[Scope, dict], CriterionResult], ...] = (
    crit_rank_one, crit_triple_agreement, crit_structure_constants, crit_kostant,
    crit_lefschetz_parity, crit_minuscule, crit_generalized_exponents, crit_consistency,
    crit_graded_hom, crit_cache,
)


def inventory(results: Sequence[CriterionResult]) -> Dict[str, object]:
    ids = sorted(r.cid for r in results)
    covered = sorted({m for r in results if r.status != "N/A" and r.checks for m in r.modules})
    missing = [m for m in ALL_MODULES if m not in covered]
    return {"criteria": ids, "modules_covered": covered, "modules_missing": missing,
            "complete": ids == list(range(1, 11)) and not missing}


def run_suite(scope: Scope = Scope(), criteria=CRITERIA, progress=None) -> dict:
    ctx: dict = {}
    results = []
    for crit in criteria:
        r = crit(scope, ctx)
        results.append(r)
        if progress:
            progress(r)
    inv = inventory(results)
    ok = inv["complete"] and all(r.status != "FAIL" for r in results)
    return {"suite": "satake-acceptance", "scope": {"datum": scope.datum, "max_height": scope.max_height},
            "criteria": [r.to_json() for r in results], "inventory": inv,
            "overall": "PASS" if ok else "FAIL"}


def summary_lines(report: dict) -> List[str]:
    lines = []
    for c in report["criteria"]:
        lines.append(f"{c['id']:>3}  {c['status']:<4}  {c['title']}  ({c['checks']} checks)")
        for f in c["failures"][:5]:
            lines.append(f"       - {f}")
    inv = report["inventory"]
    lines.append(f"inventory: criteria {inv['criteria']}; modules missing {inv['modules_missing'] or 'none'}")
    lines.append(f"overall: {report['overall']}")
    return lines
