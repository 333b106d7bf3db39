"""Identity checkers returning pass/fail reports with exact diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .euler import (chi_A, chi_k_recursive, point_zeta, reduce_product, zeta_cellwise,
                    zeta_direct)
from .groups import (FiniteGroup, Subgroup, check_homomorphism, cyclic_group, find_embedding,
                     generated_subgroup, trivial_group)
from .gspace import Space, coset_fixed_matrix, coset_data, induce, point_set
from .presentations import (DEFAULT_BUDGET, FgPresentation, count_homs, cyclic, free_abelian,
                            hom_image_array, product)
from .series import RationalSeries, first_difference, pow_int, pow_rational, tamanoi_product
from .wreath import (centralizer_order_by_type, chi_k_point_wreath, conjugacy_classes_by_type,
                     type_partition_bruteforce, wreath_group)


@dataclass
class InstanceResult:
    desc: str
    status: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"desc": self.desc, "status": "pass" if self.status else "fail", "detail": self.detail}


@dataclass
class VerificationReport:
    identity: str
    instances: list[InstanceResult] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(i.status for i in self.instances)

    def add(self, desc: str, status: bool, **detail) -> InstanceResult:
        inst = InstanceResult(desc, bool(status), detail)
        self.instances.append(inst)
        return inst

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.instances.extend(other.instances)
        return self

    def to_json(self) -> dict:
        return {"identity": self.identity,
                "instances": [i.to_json() for i in self.instances],
                "overall": "pass" if self.overall else "fail"}


def _series_json(s: RationalSeries) -> list[str]:
    return [str(c) for c in s]


def compare_series(report: VerificationReport, desc: str, lhs: RationalSeries, rhs: RationalSeries,
                   expect_equal: bool = True) -> InstanceResult:
    """Record an exact comparison; the detail carries the first mismatch, if any."""
    idx = first_difference(lhs, rhs)
    detail = {"lhs": _series_json(lhs), "rhs": _series_json(rhs)}
    if idx is not None:
        detail["first_mismatch"] = {"index": idx, "lhs": str(lhs[idx]), "rhs": str(rhs[idx])}
    return report.add(desc, (idx is None) == expect_equal, **detail)


def compare_values(report: VerificationReport, desc: str, lhs, rhs) -> InstanceResult:
    return report.add(desc, lhs == rhs, lhs=str(lhs), rhs=str(rhs))


def _describe(x: Space) -> str:
    kind = type(x).__name__
    return f"{kind}(chi={x.euler()}) over {x.group.label}"


# -- symmetric powers over the trivial group ------------------------------------------------------

def verify_macdonald(x: Space, N: int) -> VerificationReport:
    """zeta^(Z)(X, {e}) = (1 - t)^(-chi(X)); X must be over the trivial group."""
    report = VerificationReport("macdonald")
    if x.group.order != 1:
        raise ValueError("this identity is stated for the trivial group")
    lhs = zeta_direct(x, free_abelian(1), N)
    rhs = pow_rational(RationalSeries.of([1, -1], N), -x.euler())
    compare_series(report, f"{_describe(x)}, N={N}", lhs, rhs)
    return report


def verify_bryan_fulman(x: Space, a: FgPresentation, N: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """zeta^(A)_(Z,{e}) = (zeta^(A)_(pt,{e}))^chi(Z)."""
    report = VerificationReport("bryan-fulman")
    if x.group.order != 1:
        raise ValueError("the identity is stated for the trivial group")
    lhs = zeta_direct(x, a, N, budget)
    base = point_zeta(trivial_group(), a, N, budget)
    rhs = pow_int(base, x.euler())
    compare_series(report, f"{_describe(x)}, A={a}, N={N}", lhs, rhs)
    return report


# -- induction -------------------------------------------------------------------------

def w_double_count(h: FiniteGroup, k: Subgroup, a: FgPresentation, budget: int = DEFAULT_BUDGET) -> dict:
    """Count W = {(phi, [x]) : [x] in (H/K)^phi(A)} through both projections."""
    homs = hom_image_array(a, h, budget)
    fixed = coset_fixed_matrix(k)
    via_homs = int(fixed[homs].all(axis=1).sum()) if homs.shape[1] else len(homs) * fixed.shape[1]
    reps, _ = coset_data(k)
    via_cosets = 0
    for x in reps:
        conj = generated_subgroup(h, [h.conjugate(y, int(x)) for y in k.elements])
        via_cosets += count_homs(a, conj.as_group, budget, method="backtrack")
    hom_k = count_homs(a, k.as_group, budget, method="backtrack")
    return {"via_homomorphisms": via_homs, "via_cosets": via_cosets,
            "index_times_hom_K": len(reps) * hom_k, "H_order": h.order}


def verify_induction(z: Space, h: FiniteGroup, a: FgPresentation, embedding: Sequence[int] | None = None,
                     budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """chi^(A)(ind_G^H Z, H) = chi^(A)(Z, G), plus the coset double count per cell."""
    report = VerificationReport("induction")
    g = z.group
    if embedding is None:
        embedding = list(g.elements) if g is h else find_embedding(g, h)
        if embedding is None:
            raise ValueError(f"{g.label} does not embed in {h.label}")
    check_homomorphism(g, h, embedding)
    induced = induce(z, h, embedding)
    tag = f"{_describe(z)} -> {h.label}, A={a}"
    compare_values(report, f"chi invariant: {tag}", chi_A(induced, a, budget), chi_A(z, a, budget))
    seen = set()
    for cell in induced.cells:
        k = cell.stabilizer
        if k.elements in seen:
            continue
        seen.add(k.elements)
        counts = w_double_count(h, k, a, budget)
        chi_orbit = chi_A(point_set(k.as_group), a, budget)
        ok = (counts["via_homomorphisms"] == counts["via_cosets"] == counts["index_times_hom_K"]
              and counts["via_homomorphisms"] == h.order * chi_orbit)
        report.add(f"|W| double count: K of order {k.order} in {h.label}, A={a}", ok,
                   **counts, chi_K_point=str(chi_orbit))
    return report


def verify_induction_chain(z: Space, chain: Sequence[FiniteGroup], a: FgPresentation,
                           budget: int = DEFAULT_BUDGET) -> VerificationReport:
    """Induce step by step along ``chain`` and in one step along the composite map."""
    report = VerificationReport("induction")
    current, composite = z, list(z.group.elements)
    for nxt in chain:
        emb = find_embedding(current.group, nxt)
        if emb is None:
            raise ValueError(f"{current.group.label} does not embed in {nxt.label}")
        report.extend(verify_induction(current, nxt, a, emb, budget))
        composite = [emb[i] for i in composite]
        current = induce(current, nxt, emb)
    direct = induce(z, chain[-1], composite)
    same = [(c.dim, c.stabilizer.elements, c.mult) for c in direct.cells] == \
           [(c.dim, c.stabilizer.elements, c.mult) for c in current.cells]
    report.add(f"transitivity along {' -> '.join([z.group.label] + [c.label for c in chain])}", same)
    compare_values(report, "chi after chain equals chi of the original",
                   chi_A(current, a, budget), chi_A(z, a, budget))
    return report


# -- one-point product formula ------------------------------------------------------------------------------

def chi_k_point(g: FiniteGroup, k: int) -> Fraction:
    return Fraction(count_homs(free_abelian(k + 1), g), g.order)


def verify_tamanoi(g: FiniteGroup, k: int, N: int, lhs_engine: str = "types") -> VerificationReport:
    """1 + sum chi^(k)(pt^n, G_n) t^n = tamanoi_product(k, N)^(-chi^(k)(pt, G)).

    ``lhs_engine="brute"`` counts commuting tuples in the explicit G_n instead
    of recursing over wreath types.
    """
    report = VerificationReport("tamanoi")
    if lhs_engine == "types":
        lhs = RationalSeries(tuple(chi_k_point_wreath(g, n, k) for n in range(N + 1)))
    elif lhs_engine == "brute":
        lhs = RationalSeries(tuple([Fraction(1)] + [chi_k_point(wreath_group(g, n), k) for n in range(1, N + 1)]))
    else:
        raise ValueError(f"unknown engine {lhs_engine!r}")
    chi = chi_k_point(g, k)
    rhs = pow_rational(tamanoi_product(k, N), -chi)
    compare_series(report, f"G={g.label}, k={k}, N={N}, chi^(k)(pt,G)={chi}", lhs, rhs)
    return report


# -- products of A and central extensions ---------------------------------------------------

def verify_prop_product(x: Space, a1: FgPresentation, a2: FgPresentation,
                        budget: int = DEFAULT_BUDGET) -> VerificationReport:
    report = VerificationReport("prop-product")
    compare_values(report, f"{_describe(x)}, A1={a1}, A2={a2}",
                   reduce_product(x, a1, a2, budget), chi_A(x, product(a1, a2), budget))
    return report


def verify_lemma3(kprime: FiniteGroup, k_sub: Subgroup, a_elem: int, k: int) -> VerificationReport:
    """chi^(k)(K'/K', K') = r^k chi^(k)(K/K, K) for K' = <K, a>, a central over K."""
    report = VerificationReport("lemma3")
    comm = kprime.commute_matrix
    central = all(comm[a_elem, y] for y in k_sub.elements)
    r = next(r for r in range(1, kprime.order + 1) if kprime.power(a_elem, r) in k_sub)
    cyc = generated_subgroup(kprime, [a_elem])
    meet = set(cyc.elements) & set(k_sub.elements)
    meet_ok = meet == set(generated_subgroup(kprime, [kprime.power(a_elem, r)]).elements)
    spans = generated_subgroup(kprime, list(k_sub.elements) + [a_elem]).order == kprime.order
    report.add(f"hypotheses: a={a_elem} in {kprime.label}, |K|={k_sub.order}, r={r}",
               central and meet_ok and spans, central=central, intersection=meet_ok, generates=spans, r=r)
    lhs = chi_k_point(kprime, k)
    rhs = r ** k * chi_k_point(k_sub.as_group, k)
    compare_values(report, f"k={k}", lhs, rhs)
    return report


# -- counterexamples ---------------------------------------------------------------------------

#: known values for A = Z_2 and A = Z x Z_2, coefficients of t^0..t^2
REFERENCE_SERIES = {
    ("cyclic:2", "trivial"): ("1", "1", "1"),
    ("cyclic:2", "cyclic:2"): ("1", "1", "3/4"),
    ("product(free-abelian:1,cyclic:2)", "trivial"): ("1", "1", "2"),
    ("product(free-abelian:1,cyclic:2)", "cyclic:2"): ("1", "2", "4"),
}


def verify_counterexamples(N: int = 2) -> VerificationReport:
    """Reproduce the four displayed series and the failure of the product-type equation."""
    if N < 2:
        raise ValueError("the displayed series need N >= 2")
    report = VerificationReport("counterexamples")
    groups = {"trivial": trivial_group(), "cyclic:2": cyclic_group(2)}
    for a in (cyclic(2), product(free_abelian(1), cyclic(2))):
        series = {}
        for gname, g in groups.items():
            s = zeta_direct(point_set(g), a, N)
            series[gname] = s
            expected = RationalSeries.of([Fraction(c) for c in REFERENCE_SERIES[(a.label, gname)]])
            compare_series(report, f"zeta^({a})_(pt,{gname}) displayed terms",
                           s.truncate(2), expected)
        chi = chi_A(point_set(groups["cyclic:2"]), a)
        predicted = pow_rational(series["trivial"], chi)
        inst = compare_series(report, f"zeta^({a})_(pt,cyclic:2) != zeta^({a})_(pt,trivial)^{chi}",
                              series["cyclic:2"], predicted, expect_equal=False)
        inst.detail["exponent"] = str(chi)
    return report


# -- wreath conjugacy ------------------------------------------------------------------------------

def verify_conjugacy_types(g: FiniteGroup, n: int) -> VerificationReport:
    report = VerificationReport("conjugacy-types")
    classes, types = type_partition_bruteforce(g, n)
    w = wreath_group(g, n)
    by_type = conjugacy_classes_by_type(g, n)
    class_types = [{types[x] for x in c} for c in classes]
    uniform = all(len(s) == 1 for s in class_types)
    distinct = len({next(iter(s)) for s in class_types}) == len(classes)
    report.add(f"G={g.label}, n={n}: conjugacy classes = type classes", uniform and distinct,
               brute_force_classes=len(classes), types=len(by_type))
    cent_ok = all(centralizer_order_by_type(types[c[0]], g) == w.order // len(c) for c in classes)
    report.add(f"G={g.label}, n={n}: centralizer orders", cent_ok)
    sizes_bf = sorted(len(c) for c in classes)
    sizes_t = sorted(s for _, s in by_type)
    report.add(f"G={g.label}, n={n}: class sizes", sizes_bf == sizes_t and sum(sizes_t) == w.order,
               sizes=sizes_t, group_order=w.order)
    return report


# -- engine and definition agreement -------------------------------------------------------------------

def verify_engines(x: Space, a: FgPresentation, N: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    report = VerificationReport("engines")
    compare_series(report, f"{_describe(x)}, A={a}, N={N}",
                   zeta_direct(x, a, N, budget), zeta_cellwise(x, a, N, budget))
    return report


def verify_definitions(x: Space, k: int, budget: int = DEFAULT_BUDGET) -> VerificationReport:
    report = VerificationReport("definitions")
    compare_values(report, f"{_describe(x)}, k={k}",
                   chi_A(x, free_abelian(k + 1), budget), chi_k_recursive(x, k))
    return report


IDENTITIES = ("macdonald", "induction", "tamanoi", "bryan-fulman", "prop-product", "lemma3",
              "counterexamples", "conjugacy-types", "engines", "definitions")
