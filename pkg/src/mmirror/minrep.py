"""The minuscule representation in its canonical weight basis.

A minuscule representation has all weights in one Weyl orbit, so its weight
spaces are lines indexed by the coset representatives W^P.  On the basis
{v_w} the Chevalley generators act by 0/1 matrices determined entirely by
weight pairings:

    x_j(v_w) = v_{s_j w}  when <w varpi, alpha_j-vee> = -1, else 0,
    y_j(v_w) = v_{s_j w}  when <w varpi, alpha_j-vee> = +1, else 0,

with h = [e, f] acting diagonally.  The raising operator for the highest
root, x_theta, sends v_w to v_{pi_P(w s_gamma)} exactly on the set
{w : w(gamma) = -theta}, with the sign normalized to +1.  Out of these the
rigid connection matrix f + q x_theta is assembled; the mirror statement is
that it coincides, index for index, with the quantum Chevalley matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootsys import (
    RootDatum,
    fundamental_coweight,
    minuscule_nodes,
    pairing,
    simple_root,
)
from .weyl import (
    CosetReps,
    act_coweight,
    minuscule_coset_reps,
    multiply,
    pi_P,
    reflection,
    w_gamma_set,
)
from .qchev import ConnMatrix, LaurentPoly

__all__ = [
    "MinusculeRep",
    "RepOperator",
    "build_rep",
    "generator_matrices",
    "xtheta_matrix",
    "fg_connection",
    "equivariant_fg",
    "zeta_rescaling_consistent",
]


@dataclass(frozen=True)
class MinusculeRep:
    """The minuscule representation attached to (datum, node), with basis
    vectors indexed by reps.reps and weights by reps.weights."""

    datum: RootDatum
    node: int
    reps: CosetReps

    @property
    def dim(self):
        return len(self.reps)

    @property
    def space_dim(self):
        """Complex dimension of G/P, the top coset length."""
        return self.reps.reps[-1].length


@dataclass(frozen=True)
class RepOperator:
    label: str
    matrix: tuple  # dim x dim integer matrix, row = target index

    def nonzeros(self):
        return [
            (r, c, v)
            for r, row in enumerate(self.matrix)
            for c, v in enumerate(row)
            if v
        ]


def build_rep(d: RootDatum, node: int) -> MinusculeRep:
    if node not in minuscule_nodes(d.cartan_type):
        raise ValueError(f"node {node} is not minuscule for {d.cartan_type}")
    reps = minuscule_coset_reps(d, node)
    for mu in reps.weights:
        for j in range(d.rank):
            if mu[j] not in (-1, 0, 1):
                raise AssertionError(
                    "weight pairing outside {-1,0,1}: not minuscule data"
                )
    return MinusculeRep(datum=d, node=node, reps=reps)


def _raise_lower(rep: MinusculeRep, j: int, sign: int) -> RepOperator:
    """The matrix moving weights by +alpha_j (sign=-1, raising) or
    -alpha_j (sign=+1, lowering); sign is the pairing value selecting w."""
    d = rep.datum
    n = rep.dim
    alpha_fw = simple_root(d, j).fw
    m = [[0] * n for _ in range(n)]
    for c, mu in enumerate(rep.reps.weights):
        if mu[j - 1] == sign:
            target = tuple(x - sign * a for x, a in zip(mu, alpha_fw))
            r = rep.reps.index_of(rep.reps.rep_by_weight(target))
            m[r][c] = 1
    label = f"x{j}" if sign == -1 else f"y{j}"
    return RepOperator(label=label, matrix=tuple(tuple(row) for row in m))


def generator_matrices(rep: MinusculeRep) -> dict:
    """All Chevalley generator matrices plus the principal triple:
    keys 'x1'..'xr', 'y1'..'yr', 'e', 'f', 'h'."""
    d = rep.datum
    out = {}
    for j in range(1, d.rank + 1):
        out[f"x{j}"] = _raise_lower(rep, j, -1)
        out[f"y{j}"] = _raise_lower(rep, j, +1)

    n = rep.dim
    c = d.two_rho_covec.coeffs
    e = [[0] * n for _ in range(n)]
    f = [[0] * n for _ in range(n)]
    for j in range(1, d.rank + 1):
        for r, row in enumerate(out[f"x{j}"].matrix):
            for col, v in enumerate(row):
                e[r][col] += c[j - 1] * v
        for r, row in enumerate(out[f"y{j}"].matrix):
            for col, v in enumerate(row):
                f[r][col] += v
    h = [[0] * n for _ in range(n)]
    for i, mu in enumerate(rep.reps.weights):
        h[i][i] = pairing(tuple(mu), d.two_rho_covec)
    out["e"] = RepOperator("e", tuple(tuple(r) for r in e))
    out["f"] = RepOperator("f", tuple(tuple(r) for r in f))
    out["h"] = RepOperator("h", tuple(tuple(r) for r in h))
    return out


def xtheta_matrix(rep: MinusculeRep) -> RepOperator:
    """Highest-root raising operator, sign fixed to +1: v_w maps to
    v_{pi_P(w s_gamma)} precisely when w(gamma) = -theta."""
    d = rep.datum
    p = rep.reps.parabolic
    n = rep.dim
    m = [[0] * n for _ in range(n)]
    sgamma = reflection(d, p.gamma)
    for w in w_gamma_set(d, rep.reps):
        c = rep.reps.index_of(w)
        target = pi_P(d, p.I_P, multiply(d, w, sgamma))
        m[rep.reps.index_of(target)][c] = 1
    return RepOperator("xtheta", tuple(tuple(row) for row in m))


def fg_connection(rep: MinusculeRep) -> ConnMatrix:
    """Connection-form matrix f + q x_theta on the canonical basis; under
    the index identification v_w = sigma_w this is the mirror counterpart
    of the quantum Chevalley matrix."""
    variables = ("q",)
    f = generator_matrices(rep)["f"].matrix
    xt = xtheta_matrix(rep).matrix
    return ConnMatrix.build(
        rep.reps,
        variables,
        lambda r, c: LaurentPoly(
            variables, {(0,): f[r][c], (1,): xt[r][c]}
        ),
    )


def equivariant_fg(rep: MinusculeRep) -> ConnMatrix:
    """f + q x_theta shifted by the equivariant diagonal -<w varpi-vee, h>,
    in the same variables (q, h1..hr) as the equivariant Chevalley matrix."""
    d = rep.datum
    variables = ("q",) + tuple(f"h{j}" for j in range(1, d.rank + 1))
    f = generator_matrices(rep)["f"].matrix
    xt = xtheta_matrix(rep).matrix
    covec = fundamental_coweight(d, rep.node)
    npad = d.rank

    def fill(r, c):
        terms = {}
        if f[r][c]:
            terms[(0,) + (0,) * npad] = f[r][c]
        if xt[r][c]:
            terms[(1,) + (0,) * npad] = xt[r][c]
        if r == c:
            moved = act_coweight(rep.reps.reps[c], covec)
            for j, coeff in enumerate(moved):
                if coeff != 0:
                    exps = [0] * (1 + npad)
                    exps[1 + j] = 1
                    key = tuple(exps)
                    terms[key] = terms.get(key, 0) - coeff
        return LaurentPoly(variables, terms)

    return ConnMatrix.build(rep.reps, variables, fill)


def zeta_rescaling_consistent(rep: MinusculeRep, M: ConnMatrix) -> bool:
    """Homogeneity of the connection form: conjugating by diag(z^{l(w)})
    and substituting q -> z^c q multiplies every entry by z."""
    d = rep.datum
    c = d.coxeter_number
    lengths = [w.length for w in rep.reps.reps]
    variables = ("q", "z")
    z = LaurentPoly.var(variables, "z")
    for r in range(M.size):
        for col in range(M.size):
            entry = M.entry(r, col)
            lifted = LaurentPoly(
                variables,
                {
                    (k[0], lengths[r] - lengths[col] + c * k[0]): v
                    for k, v in entry.terms.items()
                },
            )
            want = z * LaurentPoly(
                variables, {(k[0], 0): v for k, v in entry.terms.items()}
            )
            if lifted != want:
                return False
    return True
