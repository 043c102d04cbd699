"""Quantum Chevalley connection matrices, exact over Laurent polynomials.

The operator "multiply by the degree-one Schubert class" acting on the
cohomology of a minuscule flag variety is assembled here in three flavours:
classical (the Hasse-diagram incidence matrix), quantum (one extra q-term
per column indexed by W(gamma)), and torus-equivariant (a linear form in
h_1..h_r on the diagonal).  A general-parabolic rule is exposed per column
for the cases, such as odd quadrics, where the minuscule shortcut does not
apply.

Matrices use the column convention: column w holds the expansion of the
operator applied to the basis class sigma_w.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .rootsys import (
    RootDatum,
    Weight,
    fundamental_coweight,
    pairing,
    reflection_length,
    simple_root,
)
from .weyl import (
    CosetReps,
    WeylElt,
    _length_of,
    _make_elt,
    _matmul,
    _reflection_matrix,
    _root_sign,
    act_coweight,
    bruhat_covers_up,
    multiply,
    pi_P,
    reflection,
    w_gamma_set,
)

__all__ = [
    "LaurentPoly",
    "ConnMatrix",
    "classical_chevalley",
    "quantum_chevalley_minuscule",
    "quantum_chevalley_fw",
    "fw_matrix",
    "mihalcea_equivariant",
    "matrix_relation",
    "check_homogeneous",
    "poincare_self_adjoint",
]


class LaurentPoly:
    """Multivariate Laurent polynomial with exact rational coefficients.

    terms maps integer exponent tuples (one slot per variable, negatives
    allowed) to nonzero Fractions.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exps, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c != 0:
                key = tuple(int(e) for e in exps)
                if len(key) != len(self.variables):
                    raise ValueError("exponent arity mismatch")
                clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def const(cls, variables, value):
        value = Fraction(value)
        if value == 0:
            return cls(variables)
        return cls(variables, {tuple([0] * len(tuple(variables))): value})

    @classmethod
    def var(cls, variables, name, power=1, coeff=1):
        variables = tuple(variables)
        exps = [0] * len(variables)
        exps[variables.index(name)] = power
        return cls(variables, {tuple(exps): Fraction(coeff)})

    # -- ring structure ------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise ValueError("variable mismatch")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.variables, other)
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = Fraction(other)
            return LaurentPoly(
                self.variables, {k: v * c for k, v in self.terms.items()}
            )
        self._check(other)
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power: invert explicitly")
        result = LaurentPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.terms == LaurentPoly.const(self.variables, other).terms
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- inspection ------------------------------------------------------

    def constant_term(self):
        return self.terms.get(tuple([0] * len(self.variables)), Fraction(0))

    def coefficient(self, **powers):
        """Coefficient of the monomial with the given variable powers."""
        key = tuple(powers.get(v, 0) for v in self.variables)
        return self.terms.get(key, Fraction(0))

    def subs(self, assignments):
        """Full evaluation; every variable must receive a Fraction value."""
        total = Fraction(0)
        vals = [Fraction(assignments[v]) for v in self.variables]
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(vals, exps):
                term *= val ** e
            total += term
        return total

    def weighted_degree(self, weights):
        """The common weighted degree of all terms, or None if inhomogeneous
        or zero.  weights maps variable name -> integer weight."""
        wvec = [weights[v] for v in self.variables]
        degs = {sum(w * e for w, e in zip(wvec, exps)) for exps in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def render(self):
        """Canonical human/CSV form, terms in lexicographic exponent order."""
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            c = str(coeff)
            if body:
                if coeff == 1:
                    piece = body
                elif coeff == -1:
                    piece = f"-{body}"
                else:
                    piece = f"{c}*{body}"
            else:
                piece = c
            parts.append(piece)
        out = parts[0]
        for p in parts[1:]:
            out += f"+{p}" if not p.startswith("-") else p
        return out

    def __repr__(self):
        return f"LaurentPoly({self.render()})"


@dataclass(frozen=True, eq=False)
class ConnMatrix:
    """Square matrix over LaurentPoly indexed by a CosetReps basis; column w
    is the operator applied to sigma_w."""

    basis: CosetReps
    variables: tuple
    entries: tuple

    @property
    def size(self):
        return len(self.entries)

    def entry(self, r, c):
        return self.entries[r][c]

    def __eq__(self, other):
        return (
            isinstance(other, ConnMatrix)
            and self.variables == other.variables
            and self.entries == other.entries
        )

    def column(self, c):
        return tuple(self.entries[r][c] for r in range(self.size))

    def mat_add(self, other):
        return ConnMatrix(
            basis=self.basis,
            variables=self.variables,
            entries=tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def mat_scale(self, s):
        return ConnMatrix(
            basis=self.basis,
            variables=self.variables,
            entries=tuple(tuple(e * s for e in row) for row in self.entries),
        )

    def mat_mul(self, other):
        n = self.size
        zero = LaurentPoly(self.variables)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return ConnMatrix(basis=self.basis, variables=self.variables,
                          entries=tuple(rows))

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    @staticmethod
    def build(basis, variables, fill):
        """fill(r, c) -> LaurentPoly."""
        n = len(basis)
        return ConnMatrix(
            basis=basis,
            variables=tuple(variables),
            entries=tuple(
                tuple(fill(r, c) for c in range(n)) for r in range(n)
            ),
        )


# --------------------------------------------------------------------------
# Chevalley rules
# --------------------------------------------------------------------------

def classical_chevalley(d: RootDatum, reps: CosetReps, node: int,
                        variables=("q",)) -> ConnMatrix:
    """Cup product by the degree-one class: column w lists the Bruhat covers
    w s_beta of w inside W^P, each with coefficient <varpi_node, beta-vee>
    (equal to 1 throughout the minuscule case)."""
    n = len(reps)
    zero = LaurentPoly(variables)
    cols = [[zero] * n for _ in range(n)]
    for c, w in enumerate(reps.reps):
        for beta, target in bruhat_covers_up(d, reps.parabolic, w):
            coeff = beta.coroot.coeffs[node - 1]
            r = reps.index_of(target)
            cols[r][c] = cols[r][c] + LaurentPoly.const(variables, coeff)
    return ConnMatrix(basis=reps, variables=tuple(variables),
                      entries=tuple(tuple(row) for row in cols))


def quantum_chevalley_minuscule(d: RootDatum, reps: CosetReps,
                                node: int) -> ConnMatrix:
    """D1 + q D2: the classical part plus, for each w with w(gamma) =
    -theta, a single quantum term q * sigma at the projected target of
    w s_gamma."""
    m = classical_chevalley(d, reps, node)
    p = reps.parabolic
    entries = [list(row) for row in m.entries]
    sgamma = reflection(d, p.gamma)
    for w in w_gamma_set(d, reps):
        c = reps.index_of(w)
        target = pi_P(d, p.I_P, multiply(d, w, sgamma))
        r = reps.index_of(target)
        entries[r][c] = entries[r][c] + LaurentPoly.var(m.variables, "q")
    return ConnMatrix(basis=reps, variables=m.variables,
                      entries=tuple(tuple(row) for row in entries))


@lru_cache(maxsize=None)
def _reflection_data(d: RootDatum, coeffs):
    beta = d.root_from_coeffs(coeffs)
    return _reflection_matrix(d, beta), reflection_length(d, beta)


def _fast_pi_p(d: RootDatum, I_P, action, inv_action):
    """pi_P on raw matrices; returns the reduced WeylElt."""
    ip = sorted(I_P)
    while True:
        for j in ip:
            if _root_sign(d, action, simple_root(d, j)) < 0:
                m, _ = _reflection_data(d, simple_root(d, j).coeffs)
                action = _matmul(action, m)
                inv_action = _matmul(m, inv_action)
                break
        else:
            return _make_elt(d, action, inv_action)


def quantum_chevalley_fw(d: RootDatum, I_P, i: int, w: WeylElt):
    """General quantum Chevalley rule for sigma_i *_q sigma_w on G/P.

    Returns a list of (coefficient, q_exponents, WeylElt) triples; the
    exponent tuple runs over the nodes outside I_P in increasing order.
    Classical terms have the zero exponent vector; quantum terms come from
    positive roots delta outside the Levi satisfying the two length
    conditions, with exponents the outside coordinates of delta-vee.
    """
    ip = sorted(set(I_P))
    if i in ip:
        raise ValueError(f"node {i} lies in the Levi subset")
    outside = [j for j in range(1, d.rank + 1) if j not in ip]
    if any(_root_sign(d, w.action, simple_root(d, j)) < 0 for j in ip):
        raise ValueError("w is not a minimal coset representative")

    levi = {
        r.coeffs for r in d.positive_roots
        if all(r.coeffs[j - 1] == 0 for j in outside)
    }
    two_rho_diff = [2] * d.rank
    for r in d.positive_roots:
        if r.coeffs in levi:
            for k in range(d.rank):
                two_rho_diff[k] -= r.fw[k]
    zero_exp = tuple([0] * len(outside))

    acc = {}
    for beta in d.positive_roots:
        if beta.coeffs in levi:
            continue
        coeff = beta.coroot.coeffs[i - 1]
        if coeff == 0:
            continue
        refl, slen = _reflection_data(d, beta.coeffs)
        act = _matmul(w.action, refl)
        lnew = _length_of(d, act)
        inv = _matmul(refl, w.inv_action)
        if lnew == w.length + 1:
            # classical candidate; needs ws_beta itself minimal
            if all(_root_sign(d, act, simple_root(d, j)) > 0 for j in ip):
                elt = _make_elt(d, act, inv)
                key = (zero_exp, elt)
                acc[key] = acc.get(key, Fraction(0)) + coeff
        if lnew == w.length - slen:
            target = _fast_pi_p(d, ip, act, inv)
            drop = sum(
                t * cv for t, cv in zip(two_rho_diff, beta.coroot.coeffs)
            )
            if target.length == w.length + 1 - drop:
                exps = tuple(beta.coroot.coeffs[j - 1] for j in outside)
                key = (exps, target)
                acc[key] = acc.get(key, Fraction(0)) + coeff
    out = [
        (coeff, exps, elt)
        for (exps, elt), coeff in acc.items()
        if coeff != 0
    ]
    out.sort(key=lambda t: (sum(t[1]), t[1], t[2].length, t[2].word))
    return out


def fw_matrix(d: RootDatum, reps: CosetReps, node: int) -> ConnMatrix:
    """Full multiplication matrix assembled column-by-column from the
    general rule; works at any maximal parabolic (e.g. odd quadrics),
    single q variable since only one node lies outside the Levi."""
    I_P = reps.parabolic.I_P
    variables = ("q",)
    n = len(reps)
    zero = LaurentPoly(variables)
    cols = [[zero] * n for _ in range(n)]
    for c, w in enumerate(reps.reps):
        for coeff, exps, elt in quantum_chevalley_fw(d, I_P, node, w):
            r = reps.index_of(elt)
            cols[r][c] = cols[r][c] + LaurentPoly(
                variables, {(exps[0],): coeff}
            )
    return ConnMatrix(basis=reps, variables=variables,
                      entries=tuple(tuple(row) for row in cols))


def mihalcea_equivariant(d: RootDatum, reps: CosetReps,
                         node: int) -> ConnMatrix:
    """Equivariant first-Chern-class action: the non-equivariant matrix
    plus the diagonal linear form -<w . varpi_node-vee, h> in column w.

    Variables are ("q", "h1", .., "hr") with h_j the value of the
    equivariant parameter on alpha_j-vee.
    """
    variables = ("q",) + tuple(f"h{j}" for j in range(1, d.rank + 1))
    base = quantum_chevalley_minuscule(d, reps, node)
    covec = fundamental_coweight(d, node)
    entries = [
        [
            LaurentPoly(variables, {
                tuple(k) + (0,) * d.rank: v for k, v in e.terms.items()
            })
            for e in row
        ]
        for row in base.entries
    ]
    for c, w in enumerate(reps.reps):
        moved = act_coweight(w, covec)
        terms = {}
        for j, coeff in enumerate(moved):
            if coeff != 0:
                exps = [0] * len(variables)
                exps[1 + j] = 1
                terms[tuple(exps)] = -coeff
        entries[c][c] = entries[c][c] + LaurentPoly(variables, terms)
    return ConnMatrix(basis=reps, variables=variables,
                      entries=tuple(tuple(row) for row in entries))


def matrix_relation(M: ConnMatrix, relation: LaurentPoly) -> bool:
    """Evaluate a polynomial in (X, q) at X = M, q = the scalar variable,
    and report exact vanishing."""
    if set(relation.variables) - {"X", "q"}:
        raise ValueError("relation must involve only X and q")
    xi = relation.variables.index("X") if "X" in relation.variables else None
    qi = relation.variables.index("q") if "q" in relation.variables else None
    n = M.size
    qvar = LaurentPoly.var(M.variables, "q")
    ident = ConnMatrix.build(
        M.basis, M.variables,
        lambda r, c: LaurentPoly.const(M.variables, int(r == c)),
    )

    powers = {0: ident}

    def mat_power(k):
        if k not in powers:
            powers[k] = mat_power(k - 1).mat_mul(M)
        return powers[k]

    acc = ident.mat_scale(LaurentPoly(M.variables))  # zero matrix
    for exps, coeff in relation.terms.items():
        a = exps[xi] if xi is not None else 0
        b = exps[qi] if qi is not None else 0
        if a < 0 or b < 0:
            raise ValueError("relation must be polynomial")
        scalar = LaurentPoly.const(M.variables, coeff) * (qvar ** b)
        acc = acc.mat_add(mat_power(a).mat_scale(scalar))
    return acc.is_zero()


# --------------------------------------------------------------------------
# Shared invariants
# --------------------------------------------------------------------------

def check_homogeneous(d: RootDatum, M: ConnMatrix, node: int) -> bool:
    """Degree homogeneity: with deg sigma_w = 2 ell(w), deg q =
    <4(rho - rho_P), alpha_node-vee> and deg h_j = 2, every nonzero entry
    at (row u, col w) has degree 2 ell(w) + 2 - 2 ell(u)."""
    p = M.basis.parabolic
    qdeg = pairing(
        Weight(tuple(4 * (1 - x) for x in p.rho_P.coeffs)),
        tuple(1 if j == node - 1 else 0 for j in range(d.rank)),
    )
    weights = {}
    for v in M.variables:
        if v == "q":
            weights[v] = qdeg
        elif v.startswith("h"):
            weights[v] = 2
        else:
            raise ValueError(f"no degree rule for variable {v}")
    lengths = [w.length for w in M.basis.reps]
    for r in range(M.size):
        for c in range(M.size):
            e = M.entries[r][c]
            if e.is_zero():
                continue
            deg = e.weighted_degree(weights)
            if deg is None or 2 * lengths[r] + deg != 2 * lengths[c] + 2:
                return False
    return True


def poincare_self_adjoint(d: RootDatum, M: ConnMatrix, pd_fn) -> bool:
    """Self-adjointness for the Poincare pairing <sigma_u, sigma_v> =
    delta_{v, PD(u)}: M[PD(v), c] == M[PD(c), v] for all c, v."""
    reps = M.basis
    dual = [reps.index_of(pd_fn(w)) for w in reps.reps]
    n = M.size
    for c in range(n):
        for v in range(n):
            if M.entries[dual[v]][c] != M.entries[dual[c]][v]:
                return False
    return True
