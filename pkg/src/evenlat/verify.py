"""One checker per published lattice computation, with exact witnesses.

Each checker recomputes a printed value from scratch and compares by exact
integer or rational equality, never approximately.  A failing comparison
records the first mismatching coordinates.  Conclusions whose published
arguments are geometric rather than arithmetic are carried as report-only
entries holding their machine-checked fragments.

The even-set cardinality rule (an even set of disjoint smooth rational
curves on a K3 surface cannot have four elements) is a trusted geometric
axiom of this harness: certificates reduce candidates to it, they do not
prove it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import discform as df
from . import refdata as rd
from .curves import find_even_four_certificate, present, triple_double_tower
from .exactlinalg import IntMat, snf, snf_rational
from .lattice import (
    Lattice,
    discriminant_group,
    nikulin_unique,
    norm_gcd,
    parse_lattice_expr,
    scale_gcd,
    sublattice,
    two_elem_invariants,
)
from .ratfun import INFINITY, Poly, RatFun, mobius_images
from .reconstruct import Reconstruction24, reconstruct_24, reconstruct_xprime, q_gram_of

AXIOM_NOTE = "even-set rejection rule (no even set of size four) used as a trusted geometric axiom"


@dataclass(frozen=True)
class Entry:
    result_id: str
    status: str  # "pass" | "fail" | "report-only"
    witnesses: dict
    expected: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class VerificationReport:
    entries: tuple[Entry, ...]

    @property
    def all_passed(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def entry(self, result_id: str) -> Entry:
        for e in self.entries:
            if e.result_id == result_id:
                return e
        raise KeyError(result_id)

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "all_passed": self.all_passed,
            "entries": [
                {
                    "result_id": e.result_id,
                    "status": e.status,
                    "witnesses": jsonable(e.witnesses),
                    "expected": jsonable(e.expected),
                    "notes": list(e.notes),
                }
                for e in self.entries
            ],
        }

    def to_markdown(self) -> str:
        lines = ["# Verification report", ""]
        lines.append(f"Overall: {'PASS' if self.all_passed else 'FAIL'}")
        lines.append("")
        for e in self.entries:
            lines.append(f"## {e.result_id}: {e.status}")
            for k, v in e.witnesses.items():
                lines.append(f"- computed {k}: {jsonable(v)}")
            for k, v in e.expected.items():
                lines.append(f"- expected {k}: {jsonable(v)}")
            for note in e.notes:
                lines.append(f"- note: {note}")
            lines.append("")
        return "\n".join(lines)


def jsonable(value):
    """Exact JSON encoding: integers stay integers, rationals become 'p/q'."""
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str) or value is None:
        return value
    if isinstance(value, IntMat):
        return [list(row) for row in value.entries]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


def _fail(result_id, witnesses, expected, notes=()):
    return Entry(result_id, "fail", witnesses, expected, tuple(notes))


def _ok(result_id, witnesses, expected=None, notes=()):
    return Entry(result_id, "pass", witnesses, expected or {}, tuple(notes))


# ---------------------------------------------------------------------------
# reconstruction bookkeeping

def reconstruction_entry(rec: Reconstruction24) -> Entry:
    sizes = rec.census_sizes()
    tower = triple_double_tower()
    witnesses = {
        "tier": rec.tier_used,
        "census": sizes,
        "multiplicity_cap": rec.multiplicity_cap,
        "pullback_census": len(tower.final.options),
    }
    selected_count = sizes[f"tier{rec.tier_used}"]
    if selected_count != 1:
        return _fail(
            "reconstruction_24",
            witnesses,
            {"selected_solutions": 1},
            (f"tier {rec.tier_used} leaves {selected_count} label-inequivalent solutions",),
        )
    return _ok(
        "reconstruction_24",
        witnesses,
        {"selected_solutions": 1},
        (
            "tier 1: shape constraints only; tier 2 adds the printed rank-6 Gram; "
            "tier 3 adds the two printed curve relations",
        ),
    )


# ---------------------------------------------------------------------------
# individual results

def verify_lemma_3_1(gram24: IntMat) -> Entry:
    s = gram24.submatrix(rd.S_BASIS, rd.S_BASIS)
    s_lat = Lattice(s, "S")
    witnesses = {
        "S_det": s_lat.det,
        "S_signature": s_lat.signature,
        "S_even": s_lat.is_even,
    }
    expected = {"S_det": -1, "S_signature": (1, 9, 0), "S_even": True}
    if s_lat.det != -1 or s_lat.signature != (1, 9, 0) or not s_lat.is_even:
        return _fail("lemma_3_1", witnesses, expected)
    qrows = []
    for qv in rd.Q_BASIS_VECTORS:
        row = [0] * 24
        for i, c in qv.items():
            row[i] = c
        qrows.append(row)
    qmat = IntMat.from_rows(qrows)
    srows = IntMat.from_rows(
        [[1 if k == i else 0 for k in range(24)] for i in rd.S_BASIS]
    )
    cross = srows * gram24 * qmat.transpose()
    for i in range(10):
        for j in range(6):
            if cross.entries[i][j] != 0:
                witnesses["S_dot_Q"] = {"row": i + 1, "col": j + 1, "value": cross.entries[i][j]}
                return _fail("lemma_3_1", witnesses, {"S_dot_Q": "all zero"})
    witnesses["S_dot_Q"] = "all zero"
    qg = q_gram_of(gram24)
    for i in range(6):
        for j in range(6):
            if qg.entries[i][j] != rd.Q_GRAM.entries[i][j]:
                witnesses["Q_gram_mismatch"] = {
                    "row": i + 1,
                    "col": j + 1,
                    "computed": qg.entries[i][j],
                    "expected": rd.Q_GRAM.entries[i][j],
                }
                return _fail("lemma_3_1", witnesses, {"Q_gram": rd.Q_GRAM})
    witnesses["Q_gram"] = qg
    return _ok("lemma_3_1", witnesses, {"Q_gram": rd.Q_GRAM})


def verify_lemma_4_1(q_gram: IntMat) -> Entry:
    lat = Lattice(q_gram, "Q")
    d, s, t = snf_rational(q_gram.inverse())
    diag = tuple(d.entries[i][i] for i in range(6))
    identity_ok = (s.to_rational() * q_gram.inverse() * t.to_rational()).entries == d.entries
    disc = discriminant_group(lat)
    witnesses = {
        "snf_diagonal": diag,
        "transform_identity": identity_ok,
        "invariant_factors": disc.invariant_factors,
        "order": disc.order,
        "det": lat.det,
    }
    expected = {
        "snf_diagonal": (1, 1, Fraction(1, 2), Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
        "transform_identity": True,
        "invariant_factors": (2, 2, 4, 4),
        "order": 64,
        "det": 64,
    }
    ok = (
        diag == expected["snf_diagonal"]
        and identity_ok
        and disc.invariant_factors == (2, 2, 4, 4)
        and disc.order == 64
        and lat.det == 64
    )
    return _ok("lemma_4_1", witnesses, expected) if ok else _fail("lemma_4_1", witnesses, expected)


def _aq_with_printed_generators(q_gram: IntMat):
    lat = Lattice(q_gram, "Q")
    module = df.from_lattice(lat)
    printed = {}
    for name, coords in (("v1", rd.V1_Q), ("v2", rd.V2_Q), ("w1", rd.W1_Q), ("w2", rd.W2_Q)):
        printed[name] = lat.dual_vector(coords)
    classes = {name: df.class_of(module, v) for name, v in printed.items()}
    return lat, module, printed, classes


def _combine(module, classes, exps):
    x = module.zero()
    for e, name in zip(exps, ("v1", "v2", "w1", "w2")):
        x = module.add(x, module.smul(e, classes[name]))
    return x


def verify_lemma_4_2(q_gram: IntMat) -> Entry:
    lat, module, printed, classes = _aq_with_printed_generators(q_gram)
    names = ("v1", "v2", "w1", "w2")
    for i, a in enumerate(names):
        for j, b in enumerate(names):
            value = printed[a].pair(printed[b])
            if value != rd.PAIRING_TABLE_Q[i][j]:
                return _fail(
                    "lemma_4_2",
                    {"table_mismatch": {"row": a, "col": b, "computed": value}},
                    {"value": rd.PAIRING_TABLE_Q[i][j]},
                )
    iso = set(df.isotropic_elements(module))
    printed_classes = {exps: _combine(module, classes, exps) for exps in rd.ISOTROPIC_AQ}
    witnesses = {
        "pairing_table": [[printed[a].pair(printed[b]) for b in names] for a in names],
        "isotropic_count": len(iso),
        "printed_classes_distinct": len(set(printed_classes.values())),
    }
    expected = {"isotropic_count": 7, "printed_is_whole_set": True}
    if len(iso) != 7 or set(printed_classes.values()) != iso:
        return _fail("lemma_4_2", witnesses, expected)
    witnesses["printed_is_whole_set"] = True
    return _ok("lemma_4_2", witnesses, expected)


def verify_thm_4_3(gram24: IntMat) -> Entry:
    config = _config_of(gram24)
    pres = present(config)
    lat = pres.lattice
    witnesses = {"curve_lattice_det": lat.det, "curve_lattice_signature": lat.signature}
    # the distinguished 16 vectors form a basis of the curve lattice
    rows = []
    for i in rd.S_BASIS:
        rows.append([1 if k == i else 0 for k in range(24)])
    for qv in rd.Q_BASIS_VECTORS:
        row = [0] * 24
        for i, c in qv.items():
            row[i] = c
        rows.append(row)
    pmat = IntMat.from_rows([[int(x) for x in pres.project(r)] for r in rows])
    witnesses["s_plus_q_index"] = abs(pmat.det())
    if abs(pmat.det()) != 1:
        return _fail("thm_4_3", witnesses, {"s_plus_q_index": 1})
    module = df.from_lattice(lat)
    subgroups = df.isotropic_subgroups(module)
    nontrivial = [s for s in subgroups if s.order > 1]
    witnesses["isotropic_subgroups"] = len(subgroups)
    # certificate for each of the seven nonzero isotropic classes
    q_gram = q_gram_of(gram24)
    _, q_module, _, classes = _aq_with_printed_generators(q_gram)
    labels = config.labels
    families = [tuple(labels[i] for i in fam) for fam in rd.RELATION_FAMILIES_24]
    class_to_cert = {}
    for exps, halfset in rd.HALFSET_AQ.items():
        vec = [Fraction(1, 2) if i in halfset else Fraction(0) for i in range(24)]
        dual = lat.dual_vector(pres.project(vec))
        if not dual.in_dual():
            return _fail("thm_4_3", {"halfset_not_in_dual": halfset}, {})
        cls24 = df.class_of(module, dual)
        cert = find_even_four_certificate(
            tuple(labels[i] for i in halfset), families, config, pres
        )
        if cert is None:
            return _fail(
                "thm_4_3",
                {"class_without_certificate": exps},
                {"certificate": "weight-4 pairwise disjoint representative"},
            )
        class_to_cert[cls24] = cert
    witnesses["certified_classes"] = len(class_to_cert)
    for sub in nontrivial:
        if not any(x in class_to_cert for x in sub.elements if any(x)):
            return _fail(
                "thm_4_3",
                {"subgroup_without_certified_class": sorted(sub.elements)},
                {},
            )
    witnesses["nontrivial_subgroups_excluded"] = len(nontrivial)
    # explicit splitting: fiber + section + eight fiber components + Q block
    split = _splitting_check(gram24, pres, lat)
    witnesses["splitting"] = split
    if not all(split.values()):
        return _fail("thm_4_3", witnesses, {"splitting": "U + E8 + Q block diagonal"})
    disc = discriminant_group(lat)
    witnesses["ns_invariant_factors"] = disc.invariant_factors
    if disc.invariant_factors != (2, 2, 4, 4):
        return _fail("thm_4_3", witnesses, {"ns_invariant_factors": (2, 2, 4, 4)})
    return _ok("thm_4_3", witnesses, {"ns_invariant_factors": (2, 2, 4, 4)}, (AXIOM_NOTE,))


def _config_of(gram24: IntMat):
    from .curves import CurveConfig

    labels = tuple(f"R{i + 1}" for i in range(24))
    return CurveConfig.from_gram(labels, gram24)


def _splitting_check(gram24, pres, lat) -> dict:
    fib = [0] * 24
    for i, c in rd.FIBER_VECTOR.items():
        fib[i] = c
    rows = [fib, [1 if k == rd.SECTION else 0 for k in range(24)]]
    for i in rd.U_E8_Q_E8_PART:
        rows.append([1 if k == i else 0 for k in range(24)])
    for qv in rd.Q_BASIS_VECTORS:
        row = [0] * 24
        for i, c in qv.items():
            row[i] = c
        rows.append(row)
    pmat = IntMat.from_rows([[int(x) for x in pres.project(r)] for r in rows])
    gram = pmat * lat.gram * pmat.transpose()
    u_block = [[gram.entries[i][j] for j in range(2)] for i in range(2)]
    e8_block = IntMat.from_rows([[gram.entries[i][j] for j in range(2, 10)] for i in range(2, 10)])
    q_block = tuple(tuple(gram.entries[i][j] for j in range(10, 16)) for i in range(10, 16))
    off = all(
        gram.entries[i][j] == 0
        for i in range(16)
        for j in range(16)
        if (i < 2) != (j < 2) or (2 <= i < 10) != (2 <= j < 10)
    )
    e8_lat = Lattice(e8_block)
    return {
        "basis": abs(pmat.det()) == 1,
        "block_diagonal": off,
        "u_block_hyperbolic": u_block == [[0, 1], [1, -2]],
        "e8_block_is_e8": e8_lat.det == 1 and e8_lat.signature == (0, 8, 0) and e8_lat.is_even,
        "q_block_printed": q_block == rd.Q_GRAM.entries,
    }


def verify_prop_4_4(q_gram: IntMat) -> Entry:
    candidate = parse_lattice_expr(rd.T_X_EXPR)
    witnesses = {
        "candidate": rd.T_X_EXPR,
        "even": candidate.is_even,
        "signature": candidate.signature,
    }
    expected = {"even": True, "signature": (2, 4, 0)}
    if not candidate.is_even or candidate.signature != (2, 4, 0):
        return _fail("prop_4_4", witnesses, expected)
    lat, ns_module, printed, classes = _aq_with_printed_generators(q_gram)
    cand_module = df.from_lattice(candidate)
    witness = df.are_isomorphic(cand_module, df.negate(ns_module))
    witnesses["disc_isomorphism_witness"] = witness
    if witness is None:
        return _fail("prop_4_4", witnesses, {"disc_isomorphism": "q_candidate = -q_NS"})
    ell = len(discriminant_group(candidate).invariant_factors)
    witnesses["l_of_A"] = ell
    witnesses["rank_bound"] = candidate.rank >= 2 + ell
    witnesses["uniqueness_predicate"] = nikulin_unique(candidate)
    # printed block form of q in the change of generators
    elems = [_combine(ns_module, classes, exps) for exps in rd.PROP44_BASIS]
    qd = tuple(df.q_value(ns_module, e) for e in elems)
    boff = {
        (i, j): df.b_value(ns_module, elems[i], elems[j])
        for i in range(4)
        for j in range(i + 1, 4)
        if df.b_value(ns_module, elems[i], elems[j]) != 0
    }
    witnesses["block_q_diag"] = qd
    witnesses["block_b_offdiag"] = {f"{i + 1},{j + 1}": v for (i, j), v in boff.items()}
    expected |= {
        "block_q_diag": rd.PROP44_Q_DIAG,
        "block_b_offdiag": {"1,2": Fraction(1, 2)},
        "uniqueness_predicate": True,
    }
    ok = (
        qd == rd.PROP44_Q_DIAG
        and boff == rd.PROP44_B_OFFDIAG
        and witnesses["uniqueness_predicate"]
        and witnesses["rank_bound"]
    )
    return _ok("prop_4_4", witnesses, expected) if ok else _fail("prop_4_4", witnesses, expected)


def verify_thm_4_5_mobius() -> Entry:
    sigma = RatFun.var()
    one = RatFun.const(1)
    prefactor = (sigma + sigma * sigma * sigma) / RatFun.const(2)
    abcd = (one, -sigma, sigma, -one)
    points = [sigma, -sigma, -(one / sigma), one / sigma]
    images = mobius_images(prefactor, abcd, points)
    sigma2 = sigma * sigma
    expect = [
        RatFun.const(0),
        sigma2,
        ((one + sigma2) * (one + sigma2)) / RatFun.const(4),
        INFINITY,
    ]
    computed = [_ratfun_str(v) for v in images]
    witnesses = {"images": computed}
    expected = {"images": [_ratfun_str(v) for v in expect]}
    ok = all(
        (a is INFINITY and b is INFINITY) or (a is not INFINITY and b is not INFINITY and a == b)
        for a, b in zip(images, expect)
    )
    if not ok:
        return _fail("thm_4_5_mobius", witnesses, expected)
    return _ok("thm_4_5_mobius", witnesses, expected)


def _ratfun_str(v) -> str:
    if v is INFINITY:
        return "INFINITY"

    def poly_str(p: Poly) -> str:
        if p.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(p.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*s" if c != 1 else "s")
            else:
                parts.append(f"{c}*s^{i}" if c != 1 else f"s^{i}")
        return " + ".join(parts)

    num = poly_str(v.num)
    if v.den == Poly.of(1):
        return num
    return f"({num})/({poly_str(v.den)})"


def fibration_entry() -> Entry:
    return Entry(
        "thm_4_5_fibration",
        "report-only",
        {"mobius_fragment": "branch points move to 0, s^2, (1+s^2)^2/4, infinity"},
        {},
        (
            "matching the resulting genus-1 pencil with the known elliptic "
            "fibration of the square-periods Kummer surface is a geometric "
            "identification, outside this harness",
        ),
    )


def verify_km_embedding() -> Entry:
    ambient = parse_lattice_expr(rd.T_X_EXPR)
    gens = IntMat.from_rows([rd.KM_ALPHA, rd.KM_BETA])
    sub = sublattice(ambient, gens)
    d, _, _ = snf(gens)
    factors = tuple(d.entries[i][i] for i in range(2))
    witnesses = {"gram": sub.induced_gram, "snf_invariant_factors": factors}
    expected = {"gram": IntMat.diagonal([4, 4]), "snf_invariant_factors": (1, 1)}
    ok = sub.induced_gram.entries == ((4, 0), (0, 4)) and factors == (1, 1)
    return _ok("km_embedding", witnesses, expected) if ok else _fail("km_embedding", witnesses, expected)


def verify_prop_4_6() -> Entry:
    tx = parse_lattice_expr(rd.T_X_EXPR)
    vec = rd.SQUARE_TWO_VECTOR
    square = tx.pairing(vec, vec)
    omega_perp = parse_lattice_expr(rd.OMEGA_Z23_PERP_EXPR)
    witnesses = {
        "square_two_vector": vec,
        "square": square,
        "norm_gcd_omega_perp": norm_gcd(omega_perp),
    }
    expected = {"square": 2, "norm_gcd_omega_perp": 4}
    if square != 2 or norm_gcd(omega_perp) != 4:
        return _fail("prop_4_6", witnesses, expected)
    mz = parse_lattice_expr("M_Z2_3")
    disc = discriminant_group(mz)
    witnesses["m_z23_rank"] = mz.rank
    witnesses["m_z23_invariant_factors"] = disc.invariant_factors
    witnesses["m_z23_negative_definite"] = mz.signature == (0, 14, 0)
    expected |= {"m_z23_rank": 14, "m_z23_invariant_factors": (2,) * 8}
    if mz.rank != 14 or disc.invariant_factors != (2,) * 8 or mz.signature != (0, 14, 0):
        return _fail("prop_4_6", witnesses, expected)
    perp_candidate = parse_lattice_expr(rd.M_Z23_PERP_EXPR)
    inv_c = two_elem_invariants(perp_candidate)
    witnesses["perp_candidate_invariants"] = inv_c
    # complement of a rank-14 negative definite block inside signature (3,19)
    expected_sig = (3, 5)
    witness_iso = df.are_isomorphic(
        df.from_lattice(perp_candidate), df.negate(df.from_lattice(mz))
    )
    witnesses["perp_disc_isomorphism_witness"] = witness_iso
    witnesses["scale_gcd_perp"] = scale_gcd(perp_candidate)
    x, y = rd.ODD_PAIRING_VECTORS
    witnesses["odd_pairing_in_tx"] = tx.pairing(x, y)
    expected |= {
        "perp_candidate_signature": expected_sig,
        "perp_disc_isomorphism": "q = -q_M",
        "scale_gcd_perp": 2,
        "odd_pairing_in_tx": 1,
    }
    ok = (
        inv_c is not None
        and inv_c[0] == expected_sig
        and inv_c[1] == 8
        and witness_iso is not None
        and scale_gcd(perp_candidate) == 2
        and tx.pairing(x, y) == 1
    )
    notes = (
        "2-elementary uniqueness (signature, l, delta) identifies the "
        "complement with the candidate; the pairing parity then obstructs "
        "a primitive embedding of the transcendental lattice",
    )
    return _ok("prop_4_6", witnesses, expected, notes) if ok else _fail("prop_4_6", witnesses, expected, notes)


def verify_section_6(gram24: IntMat) -> Entry:
    config24 = _config_of(gram24)
    xp = reconstruct_xprime(config24)
    witnesses = {
        "relation_report": {name: ok for name, ok in xp.relation_report},
        "incidence_kernel_dim": xp.incidence_kernel_dim,
    }
    if not all(ok for _, ok in xp.relation_report):
        return _fail("section_6", witnesses, {"relations": "all hold"})
    m_lat = Lattice(xp.m_gram, "M")
    d, _, _ = snf_rational(xp.m_gram.inverse())
    diag = tuple(d.entries[i][i] for i in range(16))
    expected_diag = (1,) * 10 + (Fraction(1, 2),) * 4 + (Fraction(1, 4),) * 2
    witnesses["snf_diagonal"] = diag
    if diag != expected_diag:
        return _fail("section_6", witnesses, {"snf_diagonal": expected_diag})
    module = df.from_lattice(m_lat)
    witnesses["disc_invariant_factors"] = module.orders
    if module.orders != (2, 2, 2, 2, 4, 4):
        return _fail("section_6", witnesses, {"disc_invariant_factors": (2, 2, 2, 2, 4, 4)})
    # published dual generators and the block form of q
    gens = {}
    for name, data in (
        ("v1", rd.V1_M), ("v2", rd.V2_M), ("v3", rd.V3_M),
        ("v4", rd.V4_M), ("w1", rd.W1_M), ("w2", rd.W2_M),
    ):
        coords = [Fraction(0)] * 16
        for i, c in data.items():
            coords[i] = c
        vec = m_lat.dual_vector(coords)
        if not vec.in_dual():
            return _fail("section_6", {"generator_not_in_dual": name}, {})
        gens[name] = df.class_of(module, vec)
    order = ("v1", "v2", "v3", "v4", "w1", "w2")
    try:
        df.submodule_on(module, [gens[n] for n in order], (2, 2, 2, 2, 4, 4))
    except ValueError as exc:
        return _fail("section_6", {"generators": str(exc)}, {})
    elems = []
    for exps, _ord in rd.SECTION6_BASIS:
        x = module.zero()
        for e, name in zip(exps, order):
            x = module.add(x, module.smul(e, gens[name]))
        elems.append(x)
    q_diag = tuple(df.q_value(module, x) for x in elems)
    b_off = {
        (i, j): df.b_value(module, elems[i], elems[j])
        for i in range(6)
        for j in range(i + 1, 6)
        if df.b_value(module, elems[i], elems[j]) != 0
    }
    witnesses["block_q_diag"] = q_diag
    witnesses["block_b_offdiag"] = {f"{i + 1},{j + 1}": v for (i, j), v in b_off.items()}
    if q_diag != rd.SECTION6_Q_DIAG or b_off != rd.SECTION6_B_OFFDIAG:
        return _fail(
            "section_6",
            witnesses,
            {"block_q_diag": rd.SECTION6_Q_DIAG, "block_b_offdiag": rd.SECTION6_B_OFFDIAG},
        )
    # isotropic census and even-four certificates
    iso = set(df.isotropic_elements(module))
    witnesses["isotropic_count"] = len(iso)
    labels = xp.config.labels
    printed_classes = set()
    families = [tuple(labels[i] for i in fam) for fam in rd.XPRIME_RELATION_FAMILIES]
    for halfset in rd.ISOTROPIC_AM_HALFSETS:
        coords = _m_coords(xp, halfset)
        if coords is None:
            return _fail("section_6", {"halfset_outside_dual": halfset}, {})
        printed_classes.add(df.class_of(module, m_lat.dual_vector(coords)))
        cert = find_even_four_certificate(
            tuple(labels[i] for i in halfset), families, xp.config, xp.m_presentation
        )
        if cert is None:
            return _fail("section_6", {"class_without_certificate": halfset}, {})
    witnesses["printed_classes"] = len(printed_classes)
    witnesses["printed_equals_isotropic_set"] = printed_classes == iso
    if printed_classes != iso:
        return _fail("section_6", witnesses, {"printed_equals_isotropic_set": True})
    n_half = [Fraction(1, 2) if i in rd.N_SUPPORT else Fraction(0) for i in range(20)]
    n_in_m = xp.m_presentation.contains(n_half)
    n_cert = find_even_four_certificate(
        tuple(labels[i] for i in rd.N_SUPPORT), families, xp.config, xp.m_presentation
    )
    witnesses["even_eight_half_sum_in_lattice"] = n_in_m
    witnesses["even_eight_certificate"] = None if n_cert is None else "found"
    if not n_in_m or n_cert is not None:
        return _fail(
            "section_6",
            witnesses,
            {"even_eight_half_sum_in_lattice": True, "even_eight_certificate": None},
        )
    # transcendental lattice candidate
    cand = parse_lattice_expr(rd.T_XPRIME_EXPR)
    witness_iso = df.are_isomorphic(df.from_lattice(cand), df.negate(module))
    witnesses["t_xprime_candidate"] = rd.T_XPRIME_EXPR
    witnesses["t_xprime_even"] = cand.is_even
    witnesses["t_xprime_signature"] = cand.signature
    witnesses["t_xprime_disc_isomorphism_witness"] = witness_iso
    witnesses["t_xprime_uniqueness_predicate"] = nikulin_unique(cand)
    if not cand.is_even or cand.signature != (2, 4, 0) or witness_iso is None:
        return _fail(
            "section_6",
            witnesses,
            {"t_xprime_even": True, "t_xprime_signature": (2, 4, 0)},
        )
    notes = (
        AXIOM_NOTE,
        "the rank-6 uniqueness bound does not apply here (rank 6 < 2 + 6); "
        "identifying the transcendental lattice with the candidate from the "
        "matching discriminant form rests on the cited classification of "
        "indefinite lattices in this genus, outside this harness",
        "the published relations alone leave the curve/exceptional "
        f"incidences a {xp.incidence_kernel_dim}-dimensional freedom; they "
        "are pinned to zero by the fixed points avoiding the curves",
    )
    return _ok("section_6", witnesses, {"isotropic_count": 31}, notes)


def _m_coords(xp, halfset):
    """Coordinates of a curve half-sum in the rank-16 basis, if it lies in
    the dual of M (solve over the basis rows)."""
    from .exactlinalg import solve_rational

    target = [Fraction(1, 2) if i in halfset else Fraction(0) for i in range(20)]
    cols = IntMat.from_rows(
        [[int(2 * xp.m_basis[k][i]) for k in range(16)] for i in range(20)]
    )
    sol = solve_rational(cols, [2 * t for t in target])
    if sol is None:
        return None
    return sol.particular


def verify_prop_6_2() -> Entry:
    ambient = parse_lattice_expr(rd.P62_AMBIENT_EXPR)
    gens = IntMat.from_rows(rd.P62_GENS)
    sub = sublattice(ambient, gens)
    d, _, _ = snf(gens)
    factors = tuple(d.entries[i][i] for i in range(2))
    witnesses = {"gram": sub.induced_gram, "snf_invariant_factors": factors}
    expected = {"gram": IntMat.diagonal([-4, -4]), "snf_invariant_factors": (1, 1)}
    ok = sub.induced_gram.entries == ((-4, 0), (0, -4)) and factors == (1, 1)
    return _ok("prop_6_2", witnesses, expected) if ok else _fail("prop_6_2", witnesses, expected)


def prop_6_2_report_entries() -> tuple[Entry, Entry]:
    return (
        Entry(
            "prop_6_2_ii",
            "report-only",
            {"t_xprime": rd.T_XPRIME_EXPR},
            {},
            (
                "exclusion from the published table of transcendental lattices "
                "of rank-15 quotient resolutions is a table lookup in the "
                "cited classification, outside this harness",
            ),
        ),
        Entry(
            "prop_6_2_iii",
            "report-only",
            {},
            {},
            (
                "realizing the quotient surface from the exponent-2 covering "
                "by the complementary symplectic action is geometric, outside "
                "this harness",
            ),
        ),
    )


# ---------------------------------------------------------------------------
# the full run

RESULT_IDS = (
    "reconstruction_24",
    "lemma_3_1",
    "lemma_4_1",
    "lemma_4_2",
    "thm_4_3",
    "prop_4_4",
    "thm_4_5_mobius",
    "thm_4_5_fibration",
    "km_embedding",
    "prop_4_6",
    "section_6",
    "prop_6_2",
    "prop_6_2_ii",
    "prop_6_2_iii",
)


def run_all(tier_policy: str = "auto", gram24: IntMat | None = None) -> VerificationReport:
    """Run every checker in dependency order and aggregate the entries.

    ``gram24`` overrides the reconstructed 24-curve Gram (used by the
    fault-injection tests); checker failures become entries, and checkers
    whose prerequisites failed are recorded as failed with a note.
    """
    entries: list[Entry] = []
    if gram24 is None:
        try:
            rec = reconstruct_24(tier_policy)
            entries.append(reconstruction_entry(rec))
        except Exception as exc:  # noqa: BLE001
            entries.append(
                Entry("reconstruction_24", "fail", {"exception": repr(exc)}, {}, ())
            )
        if entries[-1].status == "fail":
            gram24 = None
        else:
            gram24 = rec.gram
    else:
        entries.append(
            Entry(
                "reconstruction_24",
                "report-only",
                {"tier": "injected"},
                {},
                ("24-curve Gram supplied by the caller",),
            )
        )

    def blocked(result_id, prereq):
        return Entry(
            result_id, "fail", {}, {}, (f"prerequisite {prereq} did not pass",)
        )

    def guarded(result_id, fn):
        # a checker crash is itself a failed verification, never an exception
        try:
            return fn()
        except Exception as exc:  # noqa: BLE001
            return Entry(result_id, "fail", {"exception": repr(exc)}, {}, ())

    if gram24 is None:
        for rid in ("lemma_3_1", "lemma_4_1", "lemma_4_2", "thm_4_3", "prop_4_4", "section_6"):
            entries.append(blocked(rid, "reconstruction_24"))
    else:
        e31 = guarded("lemma_3_1", lambda: verify_lemma_3_1(gram24))
        entries.append(e31)
        q_gram = q_gram_of(gram24)
        chain_ok = e31.status == "pass"
        for rid, fn in (
            ("lemma_4_1", lambda: verify_lemma_4_1(q_gram)),
            ("lemma_4_2", lambda: verify_lemma_4_2(q_gram)),
            ("thm_4_3", lambda: verify_thm_4_3(gram24)),
        ):
            if chain_ok:
                entry = guarded(rid, fn)
                entries.append(entry)
                chain_ok = entry.status == "pass"
            else:
                entries.append(blocked(rid, "lemma_3_1"))
        if chain_ok:
            entries.append(guarded("prop_4_4", lambda: verify_prop_4_4(q_gram)))
        else:
            entries.append(blocked("prop_4_4", "thm_4_3"))
    entries.append(guarded("thm_4_5_mobius", verify_thm_4_5_mobius))
    entries.append(fibration_entry())
    entries.append(guarded("km_embedding", verify_km_embedding))
    prop44_ok = any(e.result_id == "prop_4_4" and e.status == "pass" for e in entries)
    if prop44_ok:
        entries.append(guarded("prop_4_6", verify_prop_4_6))
    else:
        entries.append(blocked("prop_4_6", "prop_4_4"))
    if gram24 is not None and any(
        e.result_id == "thm_4_3" and e.status == "pass" for e in entries
    ):
        entries.append(guarded("section_6", lambda: verify_section_6(gram24)))
    else:
        entries.append(blocked("section_6", "thm_4_3"))
    entries.append(guarded("prop_6_2", verify_prop_6_2))
    entries.extend(prop_6_2_report_entries())
    return VerificationReport(tuple(entries))
