"""Root-system data for the simple types carrying minuscule nodes.

Supported families: A_n (n >= 1), B_n and C_n (n >= 2), D_n (n >= 4), E6, E7.
G2, F4 and E8 carry no minuscule node and are rejected.

Conventions
-----------
* Node numbering follows Bourbaki throughout.
* A root is stored by its integer coordinates in the simple-root basis, a
  coroot by its coordinates in the simple-coroot basis, and a weight by its
  coordinates in the fundamental-weight basis.  With these choices the
  pairing of a weight against a coroot is a plain dot product, since
  <varpi_i, alpha_j-vee> = delta_ij.
* Root lengths are normalised so long roots have squared length 2.  The
  coroot of beta is 2*beta/(beta,beta); its coordinates are integers and are
  validated as such during construction.
* positive_roots are ordered by height, then lexicographically on the
  simple-root coordinates, so all downstream matrix layouts are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import json
import re

__all__ = [
    "CartanType",
    "Root",
    "Coroot",
    "Weight",
    "RootDatum",
    "ParabolicData",
    "build_root_datum",
    "pairing",
    "quantum_roots",
    "gamma_root",
    "levi_data",
    "minuscule_nodes",
    "minuscule_dimension",
    "is_cominuscule",
    "fundamental_weight",
    "fundamental_coweight",
    "simple_root",
    "reflection_length",
    "datum_to_json",
]

_FAMILY_PATTERN = re.compile(r"^([A-Ea-e])\s*(\d+)$")


@dataclass(frozen=True, order=True)
class CartanType:
    """A simple Lie type, e.g. CartanType('A', 3).

    Rank bounds: A n>=1, B n>=2, C n>=2, D n>=4, E n in {6, 7}.
    """

    family: str
    rank: int

    def __post_init__(self):
        fam = self.family
        n = self.rank
        ok = (
            (fam == "A" and n >= 1)
            or (fam == "B" and n >= 2)
            or (fam == "C" and n >= 2)
            or (fam == "D" and n >= 4)
            or (fam == "E" and n in (6, 7))
        )
        if not ok:
            raise ValueError(f"unsupported Cartan type {fam}{n}")

    @staticmethod
    def parse(text: str) -> "CartanType":
        """Parse strings like 'A5', 'b4', 'E7' (case-insensitive)."""
        m = _FAMILY_PATTERN.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse Cartan type from {text!r}")
        return CartanType(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    """A root in simple-root coordinates, with cached derived data.

    coeffs : integer coordinates on alpha_1..alpha_r (all >= 0 here: the
             datum only stores positive roots).
    height : sum of coeffs.
    fw     : the same root written in fundamental-weight coordinates,
             fw_k = sum_j coeffs_j * a_jk.
    coroot : the associated coroot 2*beta/(beta,beta).
    norm2  : squared length (2 for long, 1 for short in types B/C).
    """

    coeffs: tuple
    height: int
    fw: tuple
    coroot: "Coroot"
    norm2: int

    def __repr__(self):  # keep test output readable
        return f"Root{self.coeffs}"


@dataclass(frozen=True)
class Coroot:
    """A coroot (or rational coweight such as a fundamental coweight) in
    simple-coroot coordinates."""

    coeffs: tuple

    def __repr__(self):
        return f"Coroot{self.coeffs}"


@dataclass(frozen=True)
class Weight:
    """A weight in fundamental-weight coordinates (entries rational)."""

    coeffs: tuple

    def __repr__(self):
        return f"Weight{self.coeffs}"


def pairing(w, c):
    """Pairing <w, c> of a weight against a coroot: a dot product, valid
    because the bases are dual."""
    wc = w.coeffs if isinstance(w, Weight) else w
    cc = c.coeffs if isinstance(c, Coroot) else c
    if len(wc) != len(cc):
        raise ValueError(f"rank mismatch: {len(wc)} vs {len(cc)}")
    total = sum(a * b for a, b in zip(wc, cc))
    if isinstance(total, Fraction) and total.denominator == 1:
        return int(total)
    return total


def _cartan_matrix(ct: CartanType):
    """Bourbaki Cartan matrix a_ij = <alpha_i, alpha_j-vee>."""
    n = ct.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def bond(i, j, left=-1, right=-1):
        # 1-based indices; a_ij = left, a_ji = right
        a[i - 1][j - 1] = left
        a[j - 1][i - 1] = right

    if ct.family in ("A", "B", "C"):
        for i in range(1, n):
            bond(i, i + 1)
        if ct.family == "B" and n >= 2:
            # alpha_n short: <alpha_{n-1}, alpha_n-vee> = -2
            a[n - 2][n - 1] = -2
        if ct.family == "C" and n >= 2:
            # alpha_n long: <alpha_n, alpha_{n-1}-vee> = -2
            a[n - 1][n - 2] = -2
    elif ct.family == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        # undo the chain bond into node n, fork instead: n-2 -- n
        a[n - 2][n - 1] = 0
        a[n - 1][n - 2] = 0
        bond(n - 2, n)
    elif ct.family == "E":
        edges = [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)]
        if n == 7:
            edges.append((6, 7))
        for i, j in edges:
            bond(i, j)
    return tuple(tuple(row) for row in a)


def _symmetrizers(ct: CartanType):
    """d_i = (alpha_i, alpha_i)/2 in the long-roots-squared-2 normalisation."""
    n = ct.rank
    if ct.family == "B":
        return tuple([Fraction(1)] * (n - 1) + [Fraction(1, 2)])
    if ct.family == "C":
        return tuple([Fraction(1, 2)] * (n - 1) + [Fraction(1)])
    return tuple([Fraction(1)] * n)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """Root data for one simple type.

    Fields follow the obvious meanings; `positive_roots` is ordered by
    (height, lexicographic coeffs).  Lookup tables (private) map coordinates
    back to roots for sign determination in reflection computations.
    """

    cartan_type: CartanType
    cartan: tuple
    positive_roots: tuple
    highest_root: Root
    rho: Weight
    two_rho_covec: Coroot
    coxeter_number: int
    exponents: tuple
    _by_coeffs: dict = field(repr=False)
    _fw_index: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.cartan_type == other.cartan_type

    def __hash__(self):
        return hash(self.cartan_type)

    def root_from_coeffs(self, coeffs):
        """Positive Root with the given simple-root coordinates, or None."""
        return self._by_coeffs.get(tuple(coeffs))

    def signed_root_from_fw(self, fw):
        """(sign, Root) for the root with the given fundamental-weight
        coordinates; raises KeyError if the vector is not a root."""
        return self._fw_index[tuple(fw)]


def _root_fw(coeffs, cartan):
    n = len(coeffs)
    return tuple(sum(coeffs[j] * cartan[j][k] for j in range(n)) for k in range(n))


def build_root_datum(ct: CartanType) -> RootDatum:
    """Enumerate the root system by closure from the simple roots.

    The closure step uses root strings: for a root beta and simple alpha_i,
    beta + alpha_i is a root iff p - <beta, alpha_i-vee> >= 1 where p is the
    largest k with beta - k*alpha_i still a root.
    """
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    n = ct.rank
    cartan = _cartan_matrix(ct)
    dsym = _symmetrizers(ct)

    # closure by height
    levels = [set(), {tuple(1 if j == i else 0 for j in range(n)) for i in range(n)}]
    allpos = set(levels[1])
    while levels[-1]:
        nxt = set()
        for beta in levels[-1]:
            fw = _root_fw(beta, cartan)
            for i in range(n):
                # p = longest tail beta - k*alpha_i inside the system
                p = 0
                cur = list(beta)
                while True:
                    cur[i] -= 1
                    if min(cur) < 0 or tuple(cur) not in allpos:
                        break
                    p += 1
                if p - fw[i] >= 1:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        levels.append(nxt)
        allpos |= nxt

    ordered = sorted(allpos, key=lambda c: (sum(c), c))

    def make_root(coeffs):
        fw = _root_fw(coeffs, cartan)
        norm2 = sum(
            Fraction(c) * d * f for c, d, f in zip(coeffs, dsym, fw)
        )
        if norm2 not in (1, 2):
            raise AssertionError(f"unexpected root length {norm2} for {coeffs}")
        cvec = []
        for c, d in zip(coeffs, dsym):
            val = Fraction(2) * c * d / norm2
            if val.denominator != 1:
                raise AssertionError(f"non-integral coroot for {coeffs}")
            cvec.append(int(val))
        return Root(
            coeffs=tuple(coeffs),
            height=sum(coeffs),
            fw=fw,
            coroot=Coroot(tuple(cvec)),
            norm2=int(norm2),
        )

    roots = tuple(make_root(c) for c in ordered)
    by_coeffs = {r.coeffs: r for r in roots}
    fw_index = {}
    for r in roots:
        fw_index[r.fw] = (1, r)
        fw_index[tuple(-x for x in r.fw)] = (-1, r)

    theta = roots[-1]
    if any(x < 0 for x in theta.fw):
        raise AssertionError("highest root is not dominant")

    rho = Weight(tuple([1] * n))
    two_rho = [0] * n
    for r in roots:
        for k in range(n):
            two_rho[k] += r.coroot.coeffs[k]
    cox = theta.height + 1
    if 2 * len(roots) != n * cox:
        raise AssertionError("|R| != rank * coxeter_number")

    # exponents: conjugate partition of the height distribution (Kostant)
    heights = {}
    for r in roots:
        heights[r.height] = heights.get(r.height, 0) + 1
    exps = []
    maxh = max(heights)
    for m in range(1, maxh + 1):
        mult = heights.get(m, 0) - heights.get(m + 1, 0)
        exps.extend([m] * mult)
    exps = tuple(sorted(exps))
    if len(exps) != n or sum(exps) * 2 != 2 * len(roots):
        raise AssertionError("exponent bookkeeping failed")

    return RootDatum(
        cartan_type=ct,
        cartan=cartan,
        positive_roots=roots,
        highest_root=theta,
        rho=rho,
        two_rho_covec=Coroot(tuple(two_rho)),
        coxeter_number=cox,
        exponents=exps,
        _by_coeffs=by_coeffs,
        _fw_index=fw_index,
    )


def simple_root(d: RootDatum, i: int) -> Root:
    """alpha_i (1-based Bourbaki index)."""
    coeffs = tuple(1 if j == i - 1 else 0 for j in range(d.rank))
    return d.root_from_coeffs(coeffs)


def fundamental_weight(d: RootDatum, i: int) -> Weight:
    return Weight(tuple(1 if j == i - 1 else 0 for j in range(d.rank)))


def _inverse_cartan(d: RootDatum):
    """Exact inverse of the Cartan matrix (list of Fraction rows)."""
    n = d.rank
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(d.cartan)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def fundamental_coweight(d: RootDatum, i: int) -> Coroot:
    """varpi_i-vee in simple-coroot coordinates: column i of the inverse
    Cartan matrix (rational in general)."""
    inv = _inverse_cartan(d)
    return Coroot(tuple(inv[k][i - 1] for k in range(d.rank)))


def reflection_length(d: RootDatum, beta: Root) -> int:
    """ell(s_beta) as an inversion count |{alpha in R+ : s_beta(alpha) < 0}|."""
    count = 0
    bvec = beta.coroot.coeffs
    for alpha in d.positive_roots:
        k = pairing(Weight(alpha.fw), Coroot(bvec))
        image = tuple(a - k * b for a, b in zip(alpha.coeffs, beta.coeffs))
        if all(x <= 0 for x in image):
            count += 1
    return count


def quantum_roots(d: RootDatum):
    """Positive roots beta with ell(s_beta) = <2*rho, beta-vee> - 1."""
    out = []
    for beta in d.positive_roots:
        target = 2 * sum(beta.coroot.coeffs) - 1
        if reflection_length(d, beta) == target:
            out.append(beta)
    return out


def minuscule_nodes(ct: CartanType):
    """Nodes whose fundamental representation has a single Weyl orbit of
    weights, per type: A_n all, B_n {n}, C_n {1}, D_n {1, n-1, n},
    E6 {1, 6}, E7 {7}."""
    n = ct.rank
    if ct.family == "A":
        return tuple(range(1, n + 1))
    if ct.family == "B":
        return (n,)
    if ct.family == "C":
        return (1,)
    if ct.family == "D":
        return (1, n - 1, n)
    if ct.family == "E" and n == 6:
        return (1, 6)
    if ct.family == "E" and n == 7:
        return (7,)
    return ()


def is_cominuscule(d: RootDatum, node: int) -> bool:
    """True when alpha_node appears with coefficient 1 in the highest root
    (equivalently, with coefficient <= 1 in every positive root)."""
    return d.highest_root.coeffs[node - 1] == 1


def minuscule_dimension(ct: CartanType, node: int) -> int:
    """dim of the minuscule representation attached to the node."""
    from math import comb

    n = ct.rank
    if ct.family == "A":
        return comb(n + 1, node)
    if ct.family == "B":
        return 2 ** n
    if ct.family == "C":
        return 2 * n
    if ct.family == "D":
        return 2 * n if node == 1 else 2 ** (n - 1)
    if ct.family == "E" and n == 6:
        return 27
    if ct.family == "E" and n == 7:
        return 56
    raise ValueError(f"no minuscule data for {ct} node {node}")


def gamma_root(d: RootDatum, node: int) -> Root:
    """The distinguished long quantum root attached to a minuscule node:
    alpha_node for simply-laced types, alpha_{n-1} + 2 alpha_n for B_n
    (node n), and the highest root for C_n (node 1).

    Self-checks the characterization: gamma is a quantum root and
    <alpha, gamma-vee> in {-1, 0} for every alpha in R+_P.
    """
    ct = d.cartan_type
    if node not in minuscule_nodes(ct):
        raise ValueError(f"node {node} is not minuscule for {ct}")
    n = ct.rank
    if ct.family == "B":
        coeffs = [0] * n
        coeffs[n - 2] = 1
        coeffs[n - 1] = 2
        gamma = d.root_from_coeffs(coeffs)
    elif ct.family == "C":
        gamma = d.highest_root
    else:
        gamma = simple_root(d, node)

    # characterization self-check
    target = 2 * sum(gamma.coroot.coeffs) - 1
    if reflection_length(d, gamma) != target:
        raise AssertionError("gamma is not a quantum root")
    for alpha in d.positive_roots:
        if alpha.coeffs[node - 1] == 0:
            if pairing(Weight(alpha.fw), gamma.coroot) not in (-1, 0):
                raise AssertionError("gamma fails the Levi pairing check")
    return gamma


@dataclass(frozen=True)
class ParabolicData:
    """Levi data for a parabolic subgroup.

    node is set for maximal parabolics (I_P = I minus {node}); gamma and I_Q
    are populated only in the maximal minuscule case.  coset_size = |W^P|.
    """

    node: int
    I_P: tuple
    levi_positive_roots: tuple
    rho_P: Weight
    gamma: Root
    I_Q: tuple
    coset_size: int


def _orbit_size(d: RootDatum, lam) -> int:
    """Size of the Weyl orbit of a dominant weight, by plain BFS with
    simple reflections acting in fundamental-weight coordinates."""
    start = tuple(lam)
    seen = {start}
    frontier = [start]
    cartan = d.cartan
    n = d.rank
    while frontier:
        nxt = []
        for mu in frontier:
            for i in range(n):
                if mu[i] == 0:
                    continue
                img = tuple(mu[k] - mu[i] * cartan[i][k] for k in range(n))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return len(seen)


def levi_data(d: RootDatum, node: int = None, subset=None) -> ParabolicData:
    """ParabolicData for the maximal parabolic at `node`, or for a general
    I_P given as `subset` (1-based indices).

    In the maximal minuscule case this also computes gamma and
    I_Q = {j in I_P : <alpha_j, gamma-vee> = 0} and asserts the
    Coxeter-number identity <2(rho - rho_P), alpha_node-vee> = c.
    """
    n = d.rank
    if (node is None) == (subset is None):
        raise ValueError("pass exactly one of node / subset")
    if node is not None:
        I_P = tuple(j for j in range(1, n + 1) if j != node)
    else:
        I_P = tuple(sorted(subset))
        if any(j < 1 or j > n for j in I_P):
            raise ValueError("subset indices out of range")
    outside = [j for j in range(1, n + 1) if j not in I_P]
    ip_set = set(I_P)

    levi = tuple(
        r for r in d.positive_roots
        if all(r.coeffs[j - 1] == 0 for j in outside)
    )
    rho_p = [Fraction(0)] * n
    for r in levi:
        for k in range(n):
            rho_p[k] += Fraction(r.fw[k], 2)
    rho_P = Weight(tuple(rho_p))

    gamma = None
    I_Q = None
    if node is not None and node in minuscule_nodes(d.cartan_type):
        gamma = gamma_root(d, node)
        I_Q = tuple(
            j for j in I_P
            if pairing(Weight(simple_root(d, j).fw), gamma.coroot) == 0
        )
        lhs = pairing(
            Weight(tuple(2 * (1 - rp) for rp in rho_P.coeffs)),
            Coroot(tuple(1 if j == node - 1 else 0 for j in range(n))),
        )
        # <2(rho-rho_P), alpha_node-vee>: alpha_node-vee is a unit vector in
        # simple-coroot coordinates, so this is just the node coordinate.
        if lhs != d.coxeter_number:
            raise AssertionError(
                f"Coxeter-number identity failed for {d.cartan_type} node {node}"
            )

    lam = tuple(0 if (j + 1) in ip_set else 1 for j in range(n))
    size = _orbit_size(d, lam)

    return ParabolicData(
        node=node,
        I_P=I_P,
        levi_positive_roots=levi,
        rho_P=rho_P,
        gamma=gamma,
        I_Q=I_Q,
        coset_size=size,
    )


def _rat_str(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)


def datum_to_json(d: RootDatum, parabolic: ParabolicData = None) -> dict:
    """JSON-ready summary of the datum (and optionally one parabolic)."""
    out = {
        "schema": "mm/1",
        "type": str(d.cartan_type),
        "rank": d.rank,
        "cartan": [list(row) for row in d.cartan],
        "positive_roots": [list(r.coeffs) for r in d.positive_roots],
        "highest_root": list(d.highest_root.coeffs),
        "coxeter_number": d.coxeter_number,
        "exponents": list(d.exponents),
        "two_rho_covec": list(d.two_rho_covec.coeffs),
    }
    if parabolic is not None:
        out["parabolic"] = {
            "node": parabolic.node,
            "I_P": list(parabolic.I_P),
            "levi_positive_roots": [list(r.coeffs) for r in parabolic.levi_positive_roots],
            "rho_P": [_rat_str(x) for x in parabolic.rho_P.coeffs],
            "gamma": list(parabolic.gamma.coeffs) if parabolic.gamma else None,
            "I_Q": list(parabolic.I_Q) if parabolic.I_Q is not None else None,
            "coset_size": parabolic.coset_size,
        }
    return out
