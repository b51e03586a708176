"""Published target values for the verification harness.

Everything in this module is data being *checked*, never data the
algorithms depend on: Gram matrices, dual-vector coordinates, isotropic
class lists, curve relations, and involution actions for the rank-16
Neron-Severi lattices of the triple-double K3 surface X and its symplectic
quotient X'.  Curve indices are 0-based throughout (R1 -> 0, C1 -> 0).
"""

from __future__ import annotations

from fractions import Fraction

from .exactlinalg import IntMat

F = Fraction

# ---------------------------------------------------------------------------
# the 24-curve side (X)

# deck involutions acting on R1..R24, 0-based images
IOTA_001 = (2, 3, 0, 1, 6, 7, 4, 5, 8, 9, 10, 11, 14, 15, 12, 13, 18, 19, 16, 17, 20, 21, 22, 23)
IOTA_010 = (1, 0, 3, 2, 4, 5, 6, 7, 10, 11, 8, 9, 13, 12, 15, 14, 16, 17, 18, 19, 22, 23, 20, 21)
IOTA_011 = (3, 2, 1, 0, 6, 7, 4, 5, 10, 11, 8, 9, 15, 14, 13, 12, 18, 19, 16, 17, 22, 23, 20, 21)

# components over a common (-1)-curve; internally disjoint
GROUPS_24 = ((0, 1, 2, 3), (4, 5, 6, 7), (8, 9, 10, 11), (12, 13, 14, 15), (16, 17, 18, 19), (20, 21, 22, 23))

# basis of the hyperbolic-plus-E8 block: R1 R5 R9 R13 R17 R23 R4 R15 R8 R3
S_BASIS = (0, 4, 8, 12, 16, 22, 3, 14, 7, 2)
FIBER_CURVES = (0, 4, 8, 12, 16, 22, 3, 14, 7)  # S_BASIS without the section R3
SECTION = 2  # R3

# elliptic fiber class 2R1+2R4+4R5+R8+6R9+5R13+3R15+4R17+3R23
FIBER_VECTOR = {0: 2, 3: 2, 4: 4, 7: 1, 8: 6, 12: 5, 14: 3, 16: 4, 22: 3}

# basis of the rank-6 orthogonal block Q, as integer vectors over R1..R24
Q_BASIS_VECTORS = (
    {15: 1},                              # R16
    {13: 1, 20: -1, 21: 1},               # R14 - R21 + R22
    {10: 1, 1: -1, 18: 1, 19: -1},        # R11 - R2 + R19 - R20
    {16: 1, 13: 2, 17: -1, 18: -1, 19: 1},  # R17 + 2R14 - R18 - R19 + R20
    {11: 1, 9: -1, 17: 1, 19: 1},         # R12 - R10 + R18 + R20
    {2: 1, 21: 2, 5: -2, 11: -1},         # R3 + 2R22 - 2R6 - R12
)

Q_GRAM = IntMat.from_rows([
    [-2, 0, 1, 0, 2, -1],
    [0, -6, -1, -4, 4, -5],
    [1, -1, -8, 6, 2, 0],
    [0, -4, 6, -16, 4, -2],
    [2, 4, 2, 4, -8, 6],
    [-1, -5, 0, -2, 6, -12],
])

# generators of the discriminant group of Q, in Q-basis coordinates
V1_Q = (F(1, 2), F(-1, 2), 0, 0, F(1, 2), 0)
V2_Q = (F(-1, 2), F(1, 2), 0, 0, 0, 0)
W1_Q = (F(1, 2), 0, 0, F(-1, 4), 0, 0)
W2_Q = (0, 0, F(1, 4), F(-1, 4), F(-1, 4), F(-1, 4))

# dual pairing table on (v1, v2, w1, w2), pre-reduction
PAIRING_TABLE_Q = (
    (F(-5), F(5, 2), F(-1), F(-1, 2)),
    (F(5, 2), F(-2), F(1), F(1, 2)),
    (F(-1), F(1), F(-3, 2), F(-5, 4)),
    (F(-1, 2), F(1, 2), F(-5, 4), F(-11, 4)),
)

# the seven nonzero isotropic classes of A_Q, as (v1, v2, w1, w2) exponents
ISOTROPIC_AQ = (
    (0, 0, 2, 0),   # 2w1
    (0, 1, 0, 0),   # v2
    (0, 1, 2, 0),   # v2 + 2w1
    (1, 0, 0, 2),   # v1 + 2w2
    (1, 0, 2, 2),   # v1 + 2w1 + 2w2
    (1, 1, 0, 0),   # v1 + v2
    (1, 1, 2, 0),   # v1 + v2 + 2w1
)

# half-sum representatives of those classes (0-based curve index sets)
HALFSET_AQ = {
    (0, 0, 2, 0): (16, 17, 18, 19),                          # (R17+R18+R19+R20)/2
    (0, 1, 0, 0): (13, 15, 20, 21),                          # (R14+R16+R21+R22)/2
    (0, 1, 2, 0): (13, 15, 16, 17, 18, 19, 20, 21),          # alpha
    (1, 0, 0, 2): (1, 2, 10, 11, 13, 15, 16, 17, 20, 21),    # beta
    (1, 0, 2, 2): (1, 2, 10, 11, 13, 15, 18, 19, 20, 21),    # gamma
    (1, 1, 0, 0): (9, 11, 17, 19),                           # (R10+R12+R18+R20)/2
    (1, 1, 2, 0): (9, 11, 16, 18),                           # (R10+R12+R17+R19)/2
}

# 2-divisible curve relations: R13+R14+R17+R18 = R15+R16+R19+R20 and
# R11+R12+R14+R16 = R1+R3+R21+R22
RELATION_FAMILIES_24 = (
    (12, 13, 16, 17, 14, 15, 18, 19),
    (10, 11, 13, 15, 0, 2, 20, 21),
)

# splitting basis: U part is (fiber, R3); E8 part is the fiber curves
# other than R8; the Q part is Q_BASIS_VECTORS
U_E8_Q_E8_PART = (0, 4, 8, 12, 16, 22, 3, 14)

# the transcendental lattice of X and the abstract shape of its q
T_X_EXPR = "U+U(2)+diag(-4,-4)"

# change of generators exhibiting the block form of q on A_{NS(X)}:
# v2, v1+v2+2w1, v1+2w1-w2, v1+w1-w2 as (v1, v2, w1, w2) exponents
PROP44_BASIS = ((0, 1, 0, 0), (1, 1, 2, 0), (1, 0, 2, 3), (1, 0, 1, 3))
PROP44_BASIS_ORDERS = (2, 2, 4, 4)
PROP44_Q_DIAG = (F(0), F(0), F(1, 4), F(1, 4))
PROP44_B_OFFDIAG = {(0, 1): F(1, 2)}  # all other off-diagonal pairs are 0

# obstruction data for the symplectic-action exclusions
OMEGA_Z23_PERP_EXPR = "U(2)+U(2)+U(2)+diag(-4,-4)"
M_Z23_PERP_EXPR = "diag(2,2)+U(2)+diag(-2,-2,-2,-2)"
SQUARE_TWO_VECTOR = (1, 1, 0, 0, 0, 0)  # in U+U(2)+diag(-4,-4)
ODD_PAIRING_VECTORS = ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0))  # x.y = 1 in U

# Kummer specialization arithmetic: alpha, beta span diag(4,4) primitively
KM_ALPHA = (1, 2, 0, 0, 0, 0)
KM_BETA = (0, 0, 1, 1, 0, 0)

# ---------------------------------------------------------------------------
# the quotient side (X')

# orbits of iota_011 in printed order: C1 <- {R1,R4}, C2 <- {R2,R3}, ...
QUOTIENT_ORBITS = (
    (0, 3), (1, 2), (4, 6), (5, 7), (8, 10), (9, 11),
    (12, 15), (13, 14), (16, 18), (17, 19), (20, 22), (21, 23),
)

N_CURVES = 8

# curve labels on X': C1..C12 then N1..N8 (0-based indices 0..19)
def xprime_labels() -> tuple[str, ...]:
    return tuple(f"C{i + 1}" for i in range(12)) + tuple(f"N{i + 1}" for i in range(8))


# half-sum generators adjoined to the 20 curves (0-based index sets)
N_SUPPORT = tuple(range(12, 20))                      # (N1+...+N8)/2
LAMBDA1_SUPPORT = (4, 5, 8, 9, 12, 13, 14, 15)        # (C5+C6+C9+C10+N1+N2+N3+N4)/2
LAMBDA2_SUPPORT = (0, 1, 4, 5, 12, 13, 16, 17)        # (C1+C2+C5+C6+N1+N2+N5+N6)/2

# Z-basis of M: C1 C2 C3 C4 C5 C7 C8 C9 N1 N2 N3 N5 N7 N Lambda1 Lambda2
M_BASIS_CURVES = (0, 1, 2, 3, 4, 6, 7, 8, 12, 13, 14, 16, 18)

# the seven relations expressing the remaining generators in the basis:
# each maps a generator index (0..19 curves, 20=N, 21=L1, 22=L2) to its
# integer combination over the 23 generators
XPRIME_RELATIONS = (
    # C6 = C3 - C4 + C5
    (5, {2: 1, 3: -1, 4: 1}),
    # C10 = C1 + C2 + C3 + C4 - C7 - C8 - C9
    (9, {0: 1, 1: 1, 2: 1, 3: 1, 6: -1, 7: -1, 8: -1}),
    # C11 = C3 + C5 - C9
    (10, {2: 1, 4: 1, 8: -1}),
    # C12 = -C1 - C2 - C4 + C5 + C7 + C8 + C9
    (11, {0: -1, 1: -1, 3: -1, 4: 1, 6: 1, 7: 1, 8: 1}),
    # N4 = -C1 - C2 - 2C3 - 2C5 + C7 + C8 - N1 - N2 - N3 + 2*Lambda1
    (15, {0: -1, 1: -1, 2: -2, 4: -2, 6: 1, 7: 1, 12: -1, 13: -1, 14: -1, 21: 2}),
    # N6 = -C1 - C2 - C3 + C4 - 2C5 - N1 - N2 - N5 + 2*Lambda2
    (17, {0: -1, 1: -1, 2: -1, 3: 1, 4: -2, 12: -1, 13: -1, 16: -1, 22: 2}),
    # N8 = 2C1 + 2C2 + 3C3 - C4 + 4C5 - C7 - C8 + N1 + N2 - N7 + 2N - 2L1 - 2L2
    (19, {0: 2, 1: 2, 2: 3, 3: -1, 4: 4, 6: -1, 7: -1, 12: 1, 13: 1, 18: -1, 20: 2, 21: -2, 22: -2}),
)

# 2-divisible families on X' used by the even-four reductions: the three
# printed curve relations plus the adjoined half-sum generators
XPRIME_RELATION_FAMILIES = (
    (0, 1, 2, 3, 6, 7, 8, 9),      # C1+C2+C3+C4 = C7+C8+C9+C10
    (0, 1, 10, 11, 4, 5, 6, 7),    # C1+C2+C11+C12 = C5+C6+C7+C8
    (2, 4, 3, 5),                  # C3+C5 = C4+C6
    (2, 4, 8, 10),                 # C3+C5 = C9+C11
    (2, 4, 9, 11),                 # C3+C5 = C10+C12
    N_SUPPORT,
    LAMBDA1_SUPPORT,
    LAMBDA2_SUPPORT,
)

# generators of the discriminant group of M = NS(X'), in M-basis coords:
# the non-integral rows of the published dual basis
V1_M = {9: F(1, 2), 10: F(-1, 2), 11: F(-1, 2), 12: F(-1, 2)}
V2_M = {8: F(1, 2), 10: F(-1, 2), 11: F(-1, 2), 12: F(-1, 2)}
V3_M = {4: F(1, 2), 7: F(-1, 2), 11: F(-1, 2), 12: F(-1, 2)}
V4_M = {2: F(1, 2), 3: F(-1, 2)}
W1_M = {5: F(1, 4), 6: F(-1, 4), 7: F(-1, 2), 10: F(-1, 2), 12: F(-1, 2)}
W2_M = {0: F(1, 4), 1: F(-1, 4), 3: F(-1, 2), 10: F(-1, 2), 12: F(-1, 2)}

# basis change exhibiting the block form: v1, v2, v4+2w2, v3+v4, w1, w2
SECTION6_BASIS = (
    ((1, 0, 0, 0, 0, 0), 2),
    ((0, 1, 0, 0, 0, 0), 2),
    ((0, 0, 0, 1, 0, 2), 2),
    ((0, 0, 1, 1, 0, 0), 2),
    ((0, 0, 0, 0, 1, 0), 4),
    ((0, 0, 0, 0, 0, 1), 4),
)
SECTION6_Q_DIAG = (F(0), F(0), F(0), F(0), F(1, 4), F(1, 4))
SECTION6_B_OFFDIAG = {(0, 1): F(1, 2), (2, 3): F(1, 2)}

T_XPRIME_EXPR = "U(2)+U(2)+diag(-4,-4)"

# the printed isotropic half-sum representatives in A_M (0-based curve sets;
# indices 0..11 are C1..C12, 12..19 are N1..N8)
ISOTROPIC_AM_HALFSETS = (
    (0, 1, 6, 7),
    (0, 1, 2, 3),
    (2, 3, 6, 7),
    (4, 8, 16, 18),
    (12, 14, 16, 18),
    (4, 8, 12, 14),
    (13, 14, 16, 18),
    (4, 8, 13, 14),
    (0, 1, 12, 13),
    (6, 7, 12, 13),
    (2, 3, 12, 13),
    (2, 3, 4, 8, 16, 18),
    (2, 3, 4, 8, 12, 14),
    (2, 3, 4, 8, 13, 14),
    (0, 1, 4, 6, 7, 8, 16, 18),
    (0, 1, 6, 7, 12, 14, 16, 18),
    (0, 1, 2, 3, 12, 14, 16, 18),
    (2, 3, 6, 7, 12, 14, 16, 18),
    (0, 1, 4, 6, 7, 8, 12, 14),
    (0, 1, 6, 7, 13, 14, 16, 18),
    (0, 1, 2, 3, 13, 14, 16, 18),
    (2, 3, 6, 7, 13, 14, 16, 18),
    (0, 1, 4, 6, 7, 8, 13, 14),
    (0, 1, 2, 3, 6, 7, 12, 13),
    (0, 1, 4, 8, 12, 13, 16, 18),
    (4, 6, 7, 8, 12, 13, 16, 18),
    (0, 1, 2, 3, 4, 6, 7, 8, 16, 18),
    (0, 1, 2, 3, 4, 6, 7, 8, 12, 14),
    (0, 1, 2, 3, 4, 6, 7, 8, 13, 14),
    (0, 1, 2, 3, 4, 8, 12, 13, 16, 18),
    (2, 3, 4, 6, 7, 8, 12, 13, 16, 18),
)

# embedding check for Prop 6.2(i): diag(-4,-4) inside U(2)+diag(-8)
P62_AMBIENT_EXPR = "U(2)+diag(-8)"
P62_GENS = ((1, 1, 1), (-1, 1, 0))
