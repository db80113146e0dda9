import random
from fractions import Fraction

import pytest

from nilspec.exactnum import (
    GaussRat,
    IntLattice,
    QuadExtElem,
    UniPoly,
    bareiss_det,
    cofactor_det,
    enumerate_on_shell,
    hnf,
    identity,
    integer_kernel,
    perfect_square_root,
    pfaffian,
    quadext_zero_test,
    rank_and_kernel,
    smith_diagonal,
    snf,
    solve_integer,
)

Q17 = UniPoly([Fraction(1), 0, Fraction(17, 4)])  # (17/4)p^2 + 1


def rand_frac(rng, d=10):
    return Fraction(rng.randint(-d, d), rng.randint(1, 4))


def rand_gauss(rng):
    return GaussRat(rand_frac(rng), rand_frac(rng))


def rand_poly(rng, deg=2):
    return UniPoly([rand_gauss(rng) for _ in range(deg + 1)])


def test_bareiss_det_small():
    assert bareiss_det([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2
    assert bareiss_det(identity(7)) == 1


def test_bareiss_matches_cofactor_on_polynomial_matrices():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = [[rand_poly(rng) for _ in range(n)] for _ in range(n)]
        assert bareiss_det(m) == cofactor_det(m)


def test_pfaffian_basics():
    c = Fraction(5, 3)
    assert pfaffian([[Fraction(0), c], [-c, Fraction(0)]]) == c
    assert pfaffian([]) == 1
    block = [
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, -1, 0],
    ]
    assert pfaffian([[Fraction(x) for x in r] for r in block]) == 1


def test_pfaffian_rejects_bad_input():
    with pytest.raises(ValueError):
        pfaffian([[Fraction(0)] * 3 for _ in range(3)])
    with pytest.raises(ValueError):
        pfaffian([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])


def test_pfaffian_squares_to_determinant():
    rng = random.Random(11)
    count = 0
    for n in (2, 4, 6):
        for _ in range(70):
            a = [[rand_frac(rng) for _ in range(n)] for _ in range(n)]
            skew = [[a[i][j] - a[j][i] for j in range(n)] for i in range(n)]
            assert pfaffian(skew) ** 2 == bareiss_det(skew)
            count += 1
    assert count >= 200


def test_quadext_ring_axioms():
    rng = random.Random(13)
    s = QuadExtElem(UniPoly(), UniPoly.const(1), Q17)
    assert (s * s).a == Q17 and (s * s).b.is_zero()
    for _ in range(60):
        x = QuadExtElem(rand_poly(rng), rand_poly(rng), Q17)
        y = QuadExtElem(rand_poly(rng), rand_poly(rng), Q17)
        z = QuadExtElem(rand_poly(rng), rand_poly(rng), Q17)
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x
        assert x * (y + z) == x * y + x * z


def test_quadext_zero_test_and_modulus_guard():
    zero = QuadExtElem(UniPoly(), UniPoly(), Q17)
    assert quadext_zero_test(zero)
    p2 = UniPoly.monomial(1, 2)
    assert quadext_zero_test(QuadExtElem(p2 - p2, UniPoly(), Q17))
    x = QuadExtElem(UniPoly.const(1), UniPoly(), Q17)
    other = QuadExtElem(UniPoly.const(1), UniPoly(), UniPoly([0, 1]))
    from nilspec.exactnum import ModulusMismatch

    with pytest.raises(ModulusMismatch):
        _ = x + other


def test_quadext_exact_division():
    rng = random.Random(17)
    for _ in range(30):
        x = QuadExtElem(rand_poly(rng), rand_poly(rng), Q17)
        y = QuadExtElem(rand_poly(rng), rand_poly(rng), Q17)
        if y.is_zero():
            continue
        assert (x * y).exact_div(y) == x


def test_poly_division_and_gcd():
    rng = random.Random(19)
    for _ in range(40):
        a = rand_poly(rng, deg=rng.randint(0, 4))
        b = rand_poly(rng, deg=rng.randint(0, 3))
        if b.is_zero():
            continue
        q, r = a.divmod(b)
        assert q * b + r == a
        assert r.degree() < b.degree() or r.is_zero()
        assert (a * b).exact_div(b) == a


def test_perfect_square_root():
    assert perfect_square_root(Fraction(256)) == 16
    assert perfect_square_root(Fraction(0)) == 0
    assert perfect_square_root(Fraction(36)) == 6
    assert perfect_square_root(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ArithmeticError):
        perfect_square_root(Fraction(2))
    with pytest.raises(ValueError):
        perfect_square_root(Fraction(-1))


def test_hnf_idempotent_and_basis_invariant():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(n + 1)] for _ in range(n)]
        h = hnf(rows)
        assert hnf(h) == h
        # A unimodular recombination spans the same lattice.
        mixed = [r.copy() for r in rows]
        if len(mixed) >= 2:
            mixed[0] = [a + 3 * b for a, b in zip(mixed[0], mixed[1])]
            mixed[1] = [-a for a in mixed[1]]
        assert hnf(mixed) == h


def test_snf_transforms_and_kernel():
    rng = random.Random(29)
    for _ in range(40):
        nr = rng.randint(1, 4)
        nc = rng.randint(1, 4)
        m = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        s, u, v = snf(m)
        # u m v == s, diagonal with divisibility chain.
        prod = [
            [
                sum(u[i][a] * m[a][b] * v[b][j] for a in range(nr) for b in range(nc))
                for j in range(nc)
            ]
            for i in range(nr)
        ]
        assert prod == s
        diag = [s[i][i] for i in range(min(nr, nc))]
        for i in range(nr):
            for j in range(nc):
                if i != j:
                    assert s[i][j] == 0
        for a, b in zip(diag, diag[1:]):
            if b:
                assert a != 0 and b % a == 0
        for k in integer_kernel(m):
            assert all(
                sum(m[i][j] * k[j] for j in range(nc)) == 0 for i in range(nr)
            )


def test_solve_integer():
    m = [[2, 0], [0, 3]]
    assert solve_integer(m, [4, 9]) == [2, 3]
    assert solve_integer(m, [1, 0]) is None
    assert solve_integer([[2, 4]], [6]) is not None
    assert solve_integer([[2, 4]], [3]) is None


def test_lattice_dual_and_membership():
    lat = IntLattice(2, [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]])
    dual = lat.dual()
    assert dual.member([Fraction(1, 2), Fraction(0)])
    assert dual.member([Fraction(0), Fraction(1)])
    assert not dual.member([Fraction(1, 4), Fraction(0)])
    assert dual.dual() == lat


def test_lattice_equality_under_unimodular_change():
    a = IntLattice(2, [[1, 0], [0, 1]])
    b = IntLattice(2, [[1, 1], [0, 1]])
    assert a == b
    c = IntLattice(2, [[2, 0], [0, 1]])
    assert a != c


def test_lattice_member_scaled():
    lat = IntLattice(1, [[Fraction(1)]])
    assert lat.member([Fraction(3)])
    assert not lat.member([Fraction(1, 2)])


def test_dual_of_dual_random():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.randint(1, 4)
        while True:
            rows = [[rand_frac(rng, 4) for _ in range(n)] for _ in range(n)]
            lat = IntLattice(n, rows)
            if lat.rank == n:
                break
        assert lat.dual().dual() == lat


def test_intersect_kernel_splits_lattice():
    lat = IntLattice(3, identity(3))
    # Kernel of the functional x + 2y: sublattice plus complement.
    kern, compl = lat.intersect_kernel([[1, 2, 0]])
    assert len(kern) == 2 and len(compl) == 1
    for v in kern:
        assert v[0] + 2 * v[1] == 0
        assert lat.member(v)
    assert compl and lat.member(compl[0])


def test_rank_and_kernel_exact():
    m = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    rank, basis = rank_and_kernel(m)
    assert rank == 1
    assert len(basis) == 2
    for v in basis:
        assert all(
            sum(m[i][j] * v[j] for j in range(3)) == 0 for i in range(2)
        )


def test_enumerate_on_shell_diag():
    gram = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    pts = enumerate_on_shell(gram, Fraction(25))
    assert len(pts) == 12  # (+-3,+-4),(+-4,+-3),(+-5,0),(0,+-5)
    gram2 = [[Fraction(1, 4), Fraction(0)], [Fraction(0), Fraction(1)]]
    pts2 = enumerate_on_shell(gram2, Fraction(1, 4))
    assert sorted(pts2) == [(-1, 0), (1, 0)]


def test_smith_diagonal_example():
    assert smith_diagonal([[2, 0], [0, 4]]) == [2, 4]
    assert smith_diagonal([[0, 0], [0, 0]]) == [0, 0]
