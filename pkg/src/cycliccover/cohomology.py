"""Constructors for the three cohomology bases and their auxiliaries.

Index conventions.  A pair (mu, nu) is admissible on the differential
side when t_mu >= 2 and 1 <= nu <= t_mu - 1; the Kummer H^1 side reuses
the same index set, while the Artin-Schreier H^1 side indexes by the
partner exponent (t_{p-mu} >= 2), which under the extended policy also
admits mu = p paired with the mu = 0 differentials.

The basis elements are

    Kummer:          omega = x^{nu-1} (g_mu / y^mu) dx      h = y^mu / (x^nu g_mu)
    Artin-Schreier:  omega = x^{nu-1} (y^mu / g_mu) dx      h = g_{p-mu} y^{mu-1} / x^nu

with the Kummer omegas stored with y cleared from the denominator
(g_mu / y^mu = g_mu y^{n-mu} / f), so all elements stay y-polynomial.

A de Rham class is a triple (omega_0, omega_inf, f_0inf) with
d f_0inf = omega_0 - omega_inf; omega_0 regular away from the fiber over
0, omega_inf away from the fiber over infinity, f_0inf away from both.
The a-family is built by splitting the auxiliary polynomial so that the
low part divided by the x-power stays bounded at infinity and the high
part stays regular at 0.  Two knobs exist because the source formulas
need adjustment to satisfy the membership conditions verbatim:

* sign convention: the displayed triples satisfy d f = omega_0 +
  omega_inf (the split is a sum), while the Cech quotient wants a
  difference; the default "negated-infty" negates the omega_inf slot,
  which keeps its pole locus and restores the cocycle identity.
* Kummer split degree: the degree-(nu+1) split makes omega_0 regular at
  infinity only when the companion index satisfies t_{n-mu} >= 2.  When
  t_{n-mu} = 1 the companion differential g_{n-mu}/y^{n-mu} dx has a
  simple pole over infinity and the split must stop at degree nu; with
  that adjustment every emitted triple passes the membership checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .curve import ASCurve, Curve, KummerCurve, MuTable, mu_table, ram_data, require_valid
from .funcfield import FFDiff, FFElem, place_classes, pairing, valuation_bound
from .gf import FieldElement
from .polyrat import Poly, RatFn, split_at_degree


class BasisIndex(NamedTuple):
    mu: int
    nu: int


@dataclass(frozen=True)
class DeRhamTriple:
    omega0: FFDiff
    omega_inf: FFDiff
    f0inf: FFElem


@dataclass(frozen=True)
class DeRhamClass:
    kind: str  # "a" | "delta"
    index: BasisIndex
    triple: DeRhamTriple

    @property
    def label(self) -> str:
        return f"{self.kind}[{self.index.mu},{self.index.nu}]"


# -- index sets -------------------------------------------------------------


def omega_indices(curve: Curve, range_policy: str = "extended") -> list[BasisIndex]:
    """Admissible (mu, nu) pairs on the differential side, mu then nu ascending."""
    table = mu_table(curve, range_policy)
    out = []
    for mu in table.mus():
        t = table[mu].t
        if t >= 2:
            out.extend(BasisIndex(mu, nu) for nu in range(1, t))
    return out


def h1_indices(curve: Curve, range_policy: str = "extended") -> list[BasisIndex]:
    """Admissible (mu, nu) pairs on the H^1 side, mu then nu ascending."""
    table = mu_table(curve, range_policy)
    if curve.kind == "kummer":
        return omega_indices(curve, range_policy)
    p = curve.p
    out = []
    for m in reversed(table.mus()):  # h-side mu = p - m ascending
        t = table[m].t
        if t >= 2:
            out.extend(BasisIndex(p - m, nu) for nu in range(1, t))
    return out


def _require_index(indices: list[BasisIndex], mu: int, nu: int, side: str) -> None:
    if BasisIndex(mu, nu) not in indices:
        raise ValueError(f"index (mu={mu}, nu={nu}) is not admissible on the {side} side")


# -- bases -------------------------------------------------------------------


def omega_basis(curve: Curve, range_policy: str = "extended") -> list[tuple[BasisIndex, FFDiff]]:
    """Basis of holomorphic differentials for the active policy range."""
    table = mu_table(curve, range_policy)
    spec = curve.spec
    out = []
    for idx in omega_indices(curve, range_policy):
        g_mu = table[idx.mu].g_mu
        x_pow = Poly.monomial(spec, idx.nu - 1)
        if curve.kind == "kummer":
            coeff = RatFn(x_pow * g_mu, curve.f)
            elem = FFElem.monomial(curve, curve.n - idx.mu, coeff)
        else:
            coeff = RatFn(x_pow, g_mu)
            elem = FFElem.monomial(curve, idx.mu, coeff)
        out.append((idx, FFDiff(elem)))
    return out


def h1_basis(curve: Curve, range_policy: str = "extended") -> list[tuple[BasisIndex, FFElem]]:
    """Basis representatives of H^1(O), poles confined over 0 and infinity."""
    table = mu_table(curve, range_policy)
    spec = curve.spec
    out = []
    for idx in h1_indices(curve, range_policy):
        if curve.kind == "kummer":
            den = Poly.monomial(spec, idx.nu) * table[idx.mu].g_mu
            elem = FFElem.monomial(curve, idx.mu, RatFn(Poly.one(spec), den))
        else:
            g_pm = table[curve.p - idx.mu].g_mu
            elem = FFElem.monomial(curve, idx.mu - 1, RatFn(g_pm, Poly.monomial(spec, idx.nu)))
        out.append((idx, elem))
    return out


# -- Kummer auxiliaries ----------------------------------------------------------


@dataclass(frozen=True)
class KummerAux:
    I_mu: tuple[int, ...]
    psi: Poly
    phi_mu: Poly
    gg_product: Poly


def kummer_psi(curve: KummerCurve, mu: int, nu: int, table: MuTable | None = None) -> Poly:
    """The splitting polynomial
    sum_i g_i v_i x prod_{j in I \\ {i}} (x - rho_j)  -  nu n prod_{i in I} (x - rho_i);
    empty index sets degenerate to the constant -nu*n."""
    table = table if table is not None else mu_table(curve)
    row = table[mu]
    spec = curve.spec
    ram = ram_data(curve)
    I = row.I
    rhos = {i: ram.branch[i - 1].rho for i in I}
    total = Poly.zero(spec)
    for i in I:
        weight = spec.element(ram.branch[i - 1].g * row.v[i - 1])
        prod = Poly.from_roots(spec, [(rhos[j], 1) for j in I if j != i])
        total = total + (prod * weight).shift(1)
    full = Poly.from_roots(spec, [(rhos[i], 1) for i in I])
    return total - full * spec.element(nu * curve.n)


def kummer_aux(curve: KummerCurve, mu: int, nu: int) -> KummerAux:
    """Auxiliary objects of the Kummer de Rham construction at an
    admissible index: the support set I, the splitting polynomial psi,
    the n-th power phi_mu = (y^mu / g_mu)^n, and f / prod_{i in I}(x - rho_i)
    computed independently for cross-checking against g_mu * g_{n-mu}."""
    if curve.kind != "kummer":
        raise ValueError("kummer_aux requires a Kummer curve")
    _require_index(omega_indices(curve), mu, nu, "Kummer")
    table = mu_table(curve)
    row = table[mu]
    ram = ram_data(curve)
    psi = kummer_psi(curve, mu, nu, table)
    phi_mu = Poly.from_roots(
        curve.spec,
        [(e.rho, v * e.g) for e, v in zip(ram.branch, row.v)],
    )
    support = Poly.from_roots(curve.spec, [(ram.branch[i - 1].rho, 1) for i in row.I])
    gg, rem = divmod(curve.f, support)
    assert rem.is_zero, "f is divisible by the I-support product by construction"
    return KummerAux(I_mu=row.I, psi=psi, phi_mu=phi_mu, gg_product=gg)


# -- Artin-Schreier auxiliaries -----------------------------------------------------


@dataclass(frozen=True)
class ASAux:
    phi: Poly
    psi: Poly
    omega_mu: FFDiff


def as_psi(curve: ASCurve) -> Poly:
    """Numerator of dy: f sum_i l_i prod_{j != i}(x - rho_j) - f' prod_i (x - rho_i)."""
    if "as_psi" in curve._cache:
        return curve._cache["as_psi"]
    spec = curve.spec
    total = Poly.zero(spec)
    for i, (rho, l) in enumerate(curve.branch):
        others = Poly.from_roots(spec, [(r, 1) for k, (r, _) in enumerate(curve.branch) if k != i])
        total = total + others * spec.element(l)
    support = Poly.from_roots(spec, [(rho, 1) for rho, _ in curve.branch])
    psi = curve.f * total - curve.f.derivative() * support
    curve._cache["as_psi"] = psi
    return psi


def as_omega_mu(curve: ASCurve, mu: int, range_policy: str = "extended") -> FFDiff:
    """The correction differential (mu-1) g_{p-mu} y^{mu-2} / prod (x-rho_i)^{l_i+1} dx,
    defined for 1 <= mu <= p (zero at mu = 1 through the mu-1 factor)."""
    require_valid(curve)
    if mu == 1:
        return FFDiff.zero(curve)
    table = mu_table(curve, range_policy)
    g_pm = table[curve.p - mu].g_mu
    den = Poly.from_roots(curve.spec, [(rho, l + 1) for rho, l in curve.branch])
    coeff = RatFn(g_pm * curve.spec.element(mu - 1), den)
    return FFDiff(FFElem.monomial(curve, mu - 2, coeff))


def as_aux(curve: ASCurve, mu: int, nu: int, range_policy: str = "extended") -> ASAux:
    """Auxiliary objects of the Artin-Schreier de Rham construction at an
    admissible H^1-side index."""
    if curve.kind != "artin-schreier":
        raise ValueError("as_aux requires an Artin-Schreier curve")
    _require_index(h1_indices(curve, range_policy), mu, nu, "H^1")
    table = mu_table(curve, range_policy)
    spec = curve.spec
    g_pm = table[curve.p - mu].g_mu
    g_prev = table[mu - 1].g_mu
    phi = (g_pm.derivative() * g_prev).shift(1) - g_pm * g_prev * spec.element(nu)
    return ASAux(phi=phi, psi=as_psi(curve), omega_mu=as_omega_mu(curve, mu, range_policy))


# -- de Rham basis ------------------------------------------------------------------


SIGN_CONVENTIONS = ("paper", "negated-infty")


def derham_basis(
    curve: Curve,
    range_policy: str = "extended",
    sign_convention: str = "negated-infty",
) -> list[DeRhamClass]:
    """The 2g de Rham classes: the a-family projecting onto the H^1 basis
    followed by the delta-family lifting the holomorphic differentials."""
    if sign_convention not in SIGN_CONVENTIONS:
        raise ValueError(f"unknown sign convention {sign_convention!r}; use one of {SIGN_CONVENTIONS}")
    table = mu_table(curve, range_policy)
    spec = curve.spec
    out: list[DeRhamClass] = []
    if curve.kind == "kummer":
        n = curve.n
        for idx in h1_indices(curve, range_policy):
            mu, nu = idx
            aux = kummer_aux(curve, mu, nu)
            companion_t = table[n - mu].t
            split_deg = nu + 1 if companion_t >= 2 else nu
            lo, hi = split_at_degree(aux.psi, split_deg, inclusive=True)
            base = FFElem.monomial(curve, mu, RatFn(table[n - mu].g_mu, curve.f))
            scale_den = Poly.monomial(spec, nu + 1, spec.element(n))
            omega0 = FFDiff(base.scale(RatFn(lo, scale_den)))
            omega_inf = FFDiff(base.scale(RatFn(hi, scale_den)))
            if sign_convention == "negated-infty":
                omega_inf = -omega_inf
            den = Poly.monomial(spec, nu) * table[mu].g_mu
            f0inf = FFElem.monomial(curve, mu, RatFn(Poly.one(spec), den))
            out.append(DeRhamClass("a", idx, DeRhamTriple(omega0, omega_inf, f0inf)))
    else:
        for idx in h1_indices(curve, range_policy):
            mu, nu = idx
            aux = as_aux(curve, mu, nu, range_policy)
            w_prev = FFDiff(
                FFElem.monomial(curve, mu - 1, RatFn(Poly.one(spec), table[mu - 1].g_mu))
            )
            lo_phi, hi_phi = split_at_degree(aux.phi, nu + 1, inclusive=False)
            lo_psi, hi_psi = split_at_degree(aux.psi, nu, inclusive=False)
            x_nu1 = Poly.monomial(spec, nu + 1)
            x_nu = Poly.monomial(spec, nu)
            omega0 = w_prev.scale(RatFn(lo_phi, x_nu1)) + aux.omega_mu.scale(RatFn(lo_psi, x_nu))
            omega_inf = w_prev.scale(RatFn(hi_phi, x_nu1)) + aux.omega_mu.scale(RatFn(hi_psi, x_nu))
            if sign_convention == "negated-infty":
                omega_inf = -omega_inf
            g_pm = table[curve.p - mu].g_mu
            f0inf = FFElem.monomial(curve, mu - 1, RatFn(g_pm, x_nu))
            out.append(DeRhamClass("a", idx, DeRhamTriple(omega0, omega_inf, f0inf)))
    for idx, w in omega_basis(curve, range_policy):
        out.append(DeRhamClass("delta", idx, DeRhamTriple(w, w, FFElem.zero(curve))))
    return out


# -- canonical maps of the exact sequence ----------------------------------------------


def map_i(omega: FFDiff) -> DeRhamTriple:
    """H^0(Omega) -> H^1_dR: omega |-> (omega, omega, 0)."""
    return DeRhamTriple(omega, omega, FFElem.zero(omega.curve))


def map_p(triple: DeRhamTriple) -> FFElem:
    """H^1_dR -> H^1(O): (omega_0, omega_inf, f_0inf) |-> f_0inf."""
    return triple.f0inf


def h1_coordinates(
    curve: Curve, f: FFElem, range_policy: str = "extended"
) -> tuple[FieldElement, ...]:
    """Coordinates of a class [f] in the H^1 basis, read off by pairing
    against the differential basis (valid once duality holds).

    Requires f to be regular away from the fibers over 0 and infinity.
    """
    require_valid(curve)
    if f.curve is not curve:
        raise ValueError("element does not live on the given curve")
    if not f.is_zero:
        for place in place_classes(curve):
            if place.kind != "branch" or place.covers_zero:
                continue
            bound, exact = valuation_bound(f, place)
            if bound < 0:
                kind = "pole" if exact else "possible pole"
                raise ValueError(
                    f"element has a {kind} at {place.label()}: not an O(U_0 cap U_inf) class"
                )
    return tuple(pairing(f, w) for _, w in omega_basis(curve, range_policy))
