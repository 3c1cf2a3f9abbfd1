"""Decision procedures for local Kaehlerness of CR-solvmanifold triples.

The main entry point is :func:`decide_locally_kahler`, which combines three
conditions: the nilpotent sub-triple is locally Kaehler, g0 splits as a
semidirect product over m, and ad(g0) acts on m diagonalizably with purely
imaginary spectrum.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .crsmodel import (
    CRSTriple,
    SpectralReport,
    adjoint_on_m,
    compute_m,
    nilpotent_subtriple,
)
from .errors import (
    BadParameters,
    CodimOutOfRange,
    MNotZero,
    NotNilpotent,
    SubtripleNotGeneric,
    VerdictNotTrue,
)
from .liecore import center, derived, is_abelian_subspace, is_nilpotent, split_abelian_extension
from .parametric import param_matrix
from .linalg import Matrix, Subspace, char_poly, poly_at_matrix, subspace_meet_join
from .scalar.exact import format_exact, real_part, real_sign
from .scalar.interval import DEFAULT_PRECISION
from .scalar.poly import (
    Polynomial,
    all_roots_purely_imaginary,
    exact_root_clusters,
    interval_roots_imaginary,
    squarefree_part,
)
from .truth import Truth, all_of

TAGS = (
    "nilpotent-case",
    "splitting",
    "spectrum-imaginary",
    "spectrum-diagonalizable",
    "m-not-abelian-ideal",
)


def default_precision() -> int:
    raw = os.environ.get("CRSKIT_PRECISION")
    if not raw:
        return DEFAULT_PRECISION
    try:
        prec = int(raw)
    except ValueError:
        raise BadParameters(f"CRSKIT_PRECISION must be an integer, got {raw!r}") from None
    if prec < 2:
        raise BadParameters("CRSKIT_PRECISION must be at least 2")
    return prec


def _vec(v):
    return [format_exact(x) for x in v]


@dataclass
class Verdict:
    value: Truth
    failed_condition: str | None = None
    conditions: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    witness: dict | None = None
    backend_notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.value is Truth.FALSE and self.failed_condition not in TAGS:
            raise ValueError("a False verdict needs a failed-condition tag")
        if self.value is not Truth.FALSE and self.failed_condition is not None:
            raise ValueError("only False verdicts carry a failed-condition tag")

    def to_dict(self, certificates=True):
        out = {
            "value": str(self.value),
            "failed_condition": self.failed_condition,
            "conditions": {k: str(v) for k, v in self.conditions.items()},
            "witness": self.witness,
            "backend_notes": list(self.backend_notes),
        }
        if certificates:
            out["certificates"] = self.certificates
        return out


# -- nilpotent case ---------------------------------------------------------------------


def _m_in_g0(T: CRSTriple, m: Subspace) -> Subspace:
    vecs = [T.g0.coords(u) for u in m.basis]
    return Subspace.span(vecs, T.g0.dim) if vecs else Subspace.zero(T.g0.dim)


def _noncommuting_pair(L, U: Subspace, V: Subspace):
    for a, u in enumerate(U.basis):
        for b, v in enumerate(V.basis):
            w = L.bracket(u, v)
            if any(w):
                return u, v, w
    return None


def decide_nilpotent_locally_kahler(T: CRSTriple) -> Verdict:
    """Locally Kaehler iff m is abelian, [g0, m] = 0 and g0 = a0 (+) m as algebras."""
    L = T.exact_algebra
    if not is_nilpotent(L):
        raise NotNilpotent("g is not nilpotent")
    M = compute_m(T)
    certs = {"m": M.to_dict()}
    if M.m.dim == 0:
        certs["reason"] = "m = 0 (totally real)"
        return Verdict(Truth.TRUE, None, {"nilpotent-case": Truth.TRUE}, certs)
    if not M.is_abelian:
        u, v, w = _noncommuting_pair(L, M.m, M.m)
        wit = {"reason": "m is not abelian", "x": _vec(u), "y": _vec(v), "bracket": _vec(w)}
        return Verdict(Truth.FALSE, "nilpotent-case", {"nilpotent-case": Truth.FALSE}, certs, wit)
    pair = _noncommuting_pair(L, T.g0, M.m)
    if pair is not None:
        u, v, w = pair
        wit = {"reason": "[g0, m] != 0", "x": _vec(u), "y": _vec(v), "bracket": _vec(w)}
        return Verdict(Truth.FALSE, "nilpotent-case", {"nilpotent-case": Truth.FALSE}, certs, wit)
    G0 = L.restrict(T.g0)
    outcome = split_abelian_extension(G0, _m_in_g0(T, M.m), require_central_complement=True)
    certs["splitting"] = outcome.to_dict()
    if not outcome.exists:
        wit = {"reason": "m has no complementary ideal in g0", "obstruction": certs["splitting"]}
        return Verdict(Truth.FALSE, "nilpotent-case", {"nilpotent-case": Truth.FALSE}, certs, wit)
    return Verdict(Truth.TRUE, None, {"nilpotent-case": Truth.TRUE}, certs)


# -- spectrum witnesses ---------------------------------------------------------------------


def _off_axis_cluster(p: Polynomial, prec=128):
    if p.is_exact():
        for _ in range(6):
            for cl in exact_root_clusters(p, prec):
                s = cl.re_sign()
                if s:
                    return cl
            prec *= 2
        return None
    test = interval_roots_imaginary(p, prec)
    return test.witness


def _spectrum_witness(report: SpectralReport, idx: int):
    p = report.char_polys[idx]
    test = report.tests[idx]
    cl = test.witness if test is not None else _off_axis_cluster(p)
    out = {
        "generator_index": idx,
        "generator": _vec(report.generators[idx]),
        "char_poly": p.to_strings(),
    }
    if cl is not None:
        out["eigenvalue"] = cl.describe()
        out["re_sign"] = cl.re_sign()
    return out


def _diag_witness(report: SpectralReport, idx: int):
    p = report.char_polys[idx]
    out = {"generator_index": idx, "generator": _vec(report.generators[idx])}
    M = report.matrices[idx]
    if M.is_exact():
        q = squarefree_part(char_poly(M))
        R = poly_at_matrix(q, M)
        out["char_poly"] = char_poly(M).to_strings()
        out["squarefree_part"] = q.to_strings()
        out["squarefree_part_at_matrix"] = R.to_strings()
    else:
        out["char_poly"] = p.to_strings()
    return out


# -- main characterization ---------------------------------------------------------------------


MAX_DOUBLINGS = 4


def decide_locally_kahler(T: CRSTriple, *, prec: int | None = None, surrogate: bool = False,
                          max_doublings: int = MAX_DOUBLINGS) -> Verdict:
    """Three-valued locally-Kaehler verdict with certificates.

    ``prec`` is the starting interval precision for spectra involving named
    constants (default ``CRSKIT_PRECISION`` or 64 bits). An undecided spectrum
    test is retried at doubled precision up to ``max_doublings`` times.
    ``surrogate`` forces the exact path with rational stand-ins for constants.
    """
    prec = prec or default_precision()
    M = compute_m(T)
    notes = []
    certs = {"m": M.to_dict(), "codim": T.codim}
    if M.m.dim == 0:
        certs["reason"] = "totally real (m = 0): always locally Kaehler"
        conds = {k: Truth.TRUE for k in ("nilpotent-case", "splitting", "spectrum-imaginary", "spectrum-diagonalizable")}
        return Verdict(Truth.TRUE, None, conds, certs, None, notes)
    if not (M.is_abelian and M.is_ideal_in_g and M.is_ideal_in_g0):
        wit = {"is_abelian": M.is_abelian, "is_ideal_in_g": M.is_ideal_in_g, "is_ideal_in_g0": M.is_ideal_in_g0}
        L = T.exact_algebra
        if not M.is_abelian:
            u, v, w = _noncommuting_pair(L, M.m, M.m)
            wit.update(x=_vec(u), y=_vec(v), bracket=_vec(w))
        else:
            for x in (L.full() if not M.is_ideal_in_g else T.g0).basis:
                for u in M.m.basis:
                    w = L.bracket(x, u)
                    if not M.m.contains(w):
                        wit.update(x=_vec(x), y=_vec(u), bracket=_vec(w))
                        break
                if "x" in wit:
                    break
        return Verdict(Truth.FALSE, "m-not-abelian-ideal", {"m-not-abelian-ideal": Truth.FALSE}, certs, wit, notes)

    # (i) nilpotent sub-triple
    try:
        sub = nilpotent_subtriple(T)
        certs["nilradical"] = [_vec(v) for v in sub.n.basis]
        certs["n0"] = [_vec(v) for v in sub.n0.basis]
        v1 = decide_nilpotent_locally_kahler(sub.triple)
        cond_i = v1.value
        certs["nilpotent_case"] = v1.certificates
    except SubtripleNotGeneric as exc:
        v1 = None
        cond_i = Truth.UNKNOWN
        notes.append(f"nilpotent sub-triple is not generic: {exc}")

    # (ii) semidirect splitting of g0 over m
    G0 = T.exact_algebra.restrict(T.g0)
    outcome = split_abelian_extension(G0, _m_in_g0(T, M.m))
    certs["splitting"] = outcome.to_dict()
    cond_ii = Truth.of(outcome.exists)

    # (iii) spectrum of ad(g0) on m
    use_interval = T.has_constants and not surrogate
    report = adjoint_on_m(T, M, prec=prec if use_interval else None)
    imag = all_of(report.spectra_imaginary)
    tried = 0
    while use_interval and imag is Truth.UNKNOWN and tried < max_doublings:
        notes.append(f"imaginary-spectrum test undecided at {prec} bits, retrying at {2 * prec}")
        prec *= 2
        tried += 1
        report = adjoint_on_m(T, M, prec=prec)
        imag = all_of(report.spectra_imaginary)
    exact_report = report if not use_interval else None
    certs["spectral"] = report.to_dict()
    notes.extend(report.notes)
    if T.has_constants and surrogate:
        notes.append("--surrogate: constants replaced by exact stand-ins")
    diag = all_of([Truth.of(report.commuting)] + list(report.each_diagonalizable))
    if use_interval:
        notes.append(f"interval precision {prec} bits")
        if imag is Truth.UNKNOWN:
            notes.append(f"imaginary-spectrum test undecided at {prec} bits")

    conds = {
        "nilpotent-case": cond_i,
        "splitting": cond_ii,
        "spectrum-imaginary": imag,
        "spectrum-diagonalizable": diag,
    }
    value = all_of(conds.values())
    tag = None
    witness = None
    if value is Truth.FALSE:
        tag = next(k for k, v in conds.items() if v is Truth.FALSE)
        if tag == "nilpotent-case":
            witness = v1.witness
        elif tag == "splitting":
            witness = {"obstruction": certs["splitting"]}
        elif tag == "spectrum-imaginary":
            idx = next(i for i, t in enumerate(report.spectra_imaginary) if t is Truth.FALSE)
            witness = _spectrum_witness(report, idx)
        else:
            if not report.commuting:
                L = T.exact_algebra
                for d in (_from_coords(T.g0, v) for v in derived(G0).basis):
                    for u in M.m.basis:
                        w = L.bracket(d, u)
                        if any(w):
                            witness = {"reason": "action on m is not commutative", "x": _vec(d), "y": _vec(u),
                                       "bracket": _vec(w)}
                            break
                    if witness:
                        break
            else:
                idx = next(i for i, t in enumerate(report.each_diagonalizable) if t is Truth.FALSE)
                rep = exact_report or adjoint_on_m(T, M)
                witness = _diag_witness(rep, idx)
    return Verdict(value, tag, conds, certs, witness, notes)


# -- totally real / global spectrum ---------------------------------------------------------


def _imaginary(p: Polynomial, prec):
    if p.is_exact():
        return Truth.of(all_roots_purely_imaginary(p)), None
    test = interval_roots_imaginary(p, prec)
    return test.value, test


def g0_spectrum_check(T: CRSTriple, *, prec=None, surrogate=False, samples=64, seed=0) -> Verdict:
    """Purely imaginary spectrum of ad(x) on g0, per basis element plus random combinations."""
    prec = prec or default_precision()
    use_interval = T.has_constants and not surrogate
    d = T.g0.dim
    vals = T.param_values(prec) if use_interval else None

    def spectrum_poly(coeffs):
        def build(Lp):
            G = Lp.restrict(T.g0)
            A = Matrix.zeros(d, d)
            for c, i in coeffs:
                A = A + G.ad_basis(i).scale(c)
            return A

        if use_interval:
            return param_matrix(T, build).char_poly(vals, prec)
        return char_poly(build(T.exact_algebra))

    notes = []
    if use_interval:
        notes.append(f"interval precision {prec} bits")
    basis_vals = []
    for i in range(d):
        p = spectrum_poly([(mpq(1), i)])
        val, test = _imaginary(p, prec)
        basis_vals.append(val)
        if val is Truth.FALSE:
            cl = test.witness if test is not None else _off_axis_cluster(p)
            wit = {"generator_index": i, "generator": _vec(T.g0.basis[i]),
                   "eigenvalue": cl.describe() if cl is not None else None,
                   "re_sign": cl.re_sign() if cl is not None else None}
            return Verdict(Truth.FALSE, "spectrum-imaginary", {"spectrum-imaginary": Truth.FALSE},
                           {"basis_checked": i + 1}, wit, notes)
    basis_value = all_of(basis_vals)
    rng = random.Random(seed)
    sample_vals = []
    for _ in range(samples if d > 1 else 0):
        coeffs = [(mpq(rng.randint(-5, 5), rng.randint(1, 4)), i) for i in range(d)]
        p = spectrum_poly([(c, i) for c, i in coeffs if c])
        val = _imaginary(p, prec)[0]
        sample_vals.append(val)
    sample_value = all_of(sample_vals)
    certs = {"basis_checked": d, "samples": len(sample_vals)}
    if basis_value is Truth.TRUE and sample_value is Truth.FALSE:
        notes.append("basis elements pass but a random combination fails: basis check is not conclusive")
        return Verdict(Truth.UNKNOWN, None, {"spectrum-imaginary": Truth.UNKNOWN}, certs, None, notes)
    value = all_of([basis_value, sample_value])
    return Verdict(value, "spectrum-imaginary" if value is Truth.FALSE else None,
                   {"spectrum-imaginary": value}, certs, None, notes)


def decide_kahler_totally_real(T: CRSTriple, *, prec=None, surrogate=False, samples=64, seed=0) -> Verdict:
    """Kaehler criterion for m = 0: every ad(x), x in g0, has purely imaginary spectrum."""
    M = compute_m(T)
    if M.m.dim:
        raise MNotZero(f"m has real dimension {M.m.dim}")
    return g0_spectrum_check(T, prec=prec, surrogate=surrogate, samples=samples, seed=seed)


# -- necessary conditions --------------------------------------------------------------------


def necessary_conditions_report(T: CRSTriple, verdict: Verdict | None = None) -> dict:
    """Checkable consequences of local Kaehlerness, with consistency flags."""
    L = T.exact_algebra
    M = compute_m(T)
    m = M.m
    z = center(L)
    mz, _ = subspace_meet_join(m, z)
    gm = L.bracket_space(L.full(), m)
    out = {
        "m_abelian": M.is_abelian,
        "m_ideal_in_g": M.is_ideal_in_g,
        "m_ideal_in_g0": M.is_ideal_in_g0,
        "center_dim": z.dim,
        "m_cap_center_dim": mz.dim,
        "g_m_dim": gm.dim,
    }
    checks = {}
    # m = (m ∩ z) (+) [g, m]
    if M.is_ideal_in_g:
        meet, join = subspace_meet_join(mz, gm)
        checks["m_splits_center_plus_bracket"] = meet.dim == 0 and join == m
    if z.dim == 0:
        checks["center_free_bracket_is_m"] = gm == m
    nil = is_nilpotent(L)
    out["g_nilpotent"] = nil
    if nil:
        gprime = derived(L)
        mg, _ = subspace_meet_join(m, gprime)
        z0_local = center(L.restrict(T.g0))
        z0 = Subspace.span([_from_coords(T.g0, v) for v in z0_local.basis], T.dim) if z0_local.dim else Subspace.zero(T.dim)
        _, zz = subspace_meet_join(z0, z0.image(T.J))
        checks["m_in_center"] = z.contains_subspace(m)
        checks["m_cap_derived_zero"] = mg.dim == 0
        checks["center_is_z0_plus_iz0"] = zz == z
    out["checks"] = checks
    if verdict is not None:
        out["verdict"] = str(verdict.value)
        if verdict.value is Truth.TRUE:
            out["consistent"] = all(checks.values())
        else:
            out["consistent"] = True
            out["failing_checks"] = [k for k, v in checks.items() if not v]
    return out


def _from_coords(U: Subspace, c):
    n = U.ambient_dim
    out = [mpq(0)] * n
    for f, b in zip(c, U.basis):
        if f:
            out = [o + f * x for o, x in zip(out, b)]
    return tuple(out)


# -- lemma on two-dimensional groups ---------------------------------------------------------


def lemma31_verdict(beta):
    """Local Kaehlerness of the two-dimensional example: iff Re(beta) = 0."""
    from .scalar.interval import CInterval

    if isinstance(beta, CInterval):
        if beta.real_is_point_zero():
            return Truth.TRUE
        s = beta.re_sign()
        return Truth.UNKNOWN if s is None or s == 0 else Truth.FALSE
    return Truth.of(real_sign(real_part(beta)) == 0)


# -- holomorphic function assertions and low codimension ----------------------------------


def assert_cousin_forcing(T: CRSTriple, no_holomorphic_functions: bool, verdict: Verdict | None = None) -> dict:
    """Consistency of the assertion O(G/Gamma) = C with the algebra.

    Locally Kaehler with only constant holomorphic functions forces g nilpotent
    and then abelian.
    """
    verdict = verdict or decide_locally_kahler(T)
    if verdict.value is not Truth.TRUE:
        raise VerdictNotTrue(f"verdict is {verdict.value}")
    if not no_holomorphic_functions:
        return {"status": "NotApplicable", "checked": []}
    L = T.exact_algebra
    nil = is_nilpotent(L)
    abelian = nil and is_abelian_subspace(L, L.full())
    status = "Consistent" if abelian else "Inconsistent"
    reason = None if abelian else ("g is not nilpotent" if not nil else "g is nilpotent but not abelian")
    return {"status": status, "checked": ["g_nilpotent", "g_abelian"], "g_nilpotent": nil,
            "g_abelian": abelian, "reason": reason}


CASES = {
    1: ("Cousin", "torus x C*"),
    2: ("Cousin", "Cousin-hypersurface x C*", "torus x C* x C*"),
}
UNDETERMINED = "undetermined-needs-lattice-data"


@dataclass
class ClassificationCase:
    codim: int
    case: str
    assumptions_used: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self):
        return {"codim": self.codim, "case": self.case, "assumptions_used": list(self.assumptions_used),
                "candidates": list(self.candidates), "notes": list(self.notes)}


def classify_low_codim(T: CRSTriple, verdict: Verdict, assertions: dict | None = None) -> ClassificationCase:
    """Resolve the low-codimension case list using user assertions about Gamma.

    ``assertions`` may hold ``no_holomorphic_functions`` (bool) and
    ``reduction_base_dim`` (1 or 2).
    """
    if verdict.value is not Truth.TRUE:
        raise VerdictNotTrue(f"verdict is {verdict.value}")
    codim = T.codim
    if codim not in CASES:
        raise CodimOutOfRange(f"codimension {codim} is not 1 or 2")
    assertions = dict(assertions or {})
    cands = list(CASES[codim])
    if assertions.get("no_holomorphic_functions"):
        rep = assert_cousin_forcing(T, True, verdict)
        if rep["status"] == "Consistent":
            return ClassificationCase(codim, "Cousin", ["no_holomorphic_functions"], cands)
        return ClassificationCase(codim, UNDETERMINED, ["no_holomorphic_functions"], cands,
                                  [f"assertion O = C is inconsistent with the algebra: {rep['reason']}"])
    base = assertions.get("reduction_base_dim")
    if base is not None:
        if base not in (1, 2) or base > codim:
            raise BadParameters(f"holomorphic reduction base dimension {base} impossible in codimension {codim}")
        case = cands[base]
        return ClassificationCase(codim, case, ["reduction_base_dim"], cands)
    return ClassificationCase(codim, UNDETERMINED, [], cands)
