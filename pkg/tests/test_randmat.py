import pytest

from coreinv import linalg, randmat
from coreinv.category import Morphism, is_inner_inverse, kernel
from coreinv.errors import InfeasibleSpecError
from coreinv.fileio import dump_matrix
from coreinv.linalg import QI, Q, Mat
from coreinv.theorems import index_oracle


def test_examples():
    a = Morphism.endo(randmat.gen_random(2, 1, "1", seed=3))
    assert linalg.rank(a.mat) == linalg.rank((a @ a).mat) == 1
    b = Morphism.endo(randmat.gen_random(2, 1, "ge2", seed=3))
    assert linalg.rank(b.mat) == 1 and linalg.rank((b @ b).mat) == 0
    assert randmat.gen_random(3, 0, "1", seed=1) == Mat.zeros(3, 3)


@pytest.mark.parametrize("args", [(2, 3, "1"), (2, -1, "1"), (2, 0, "ge2"), (2, 2, "ge2"), (3, 1, "2")])
def test_infeasible(args):
    with pytest.raises(InfeasibleSpecError):
        randmat.gen_random(*args)


def test_determinism():
    for seed in range(20):
        a = randmat.gen_random(4, 2, "ge2", seed=seed)
        b = randmat.gen_random(4, 2, "ge2", seed=seed)
        assert dump_matrix(a) == dump_matrix(b)
    assert randmat.gen_random(4, 3, seed=1) != randmat.gen_random(4, 3, seed=2)


def test_known_stream():
    """Pins the generator identity: a changed PRNG or construction breaks reproducers."""
    m = randmat.gen_random(3, 2, "1", seed=42)
    assert m.tolist() == [[22, 13, -13], [-29, -17, 17], [22, 13, -13]]
    assert dump_matrix(m) == dump_matrix(randmat.gen_random(3, 2, "1", rng=randmat.make_rng(42)))


@pytest.mark.parametrize("field", [Q, QI])
def test_index_oracle_on_1000_draws(field):
    count = 1000 if field == Q else 200
    for i in range(count):
        rng = randmat.instance_rng(f"oracle-{field}", i)
        dim = rng.randint(2, 4)
        rank = rng.randint(1, dim - 1)
        a = Morphism.endo(randmat.gen_random(dim, rank, "1", field=field, rng=rng, bound=5))
        g = Morphism.endo(randmat.gen_random(dim, rank, "ge2", field=field, rng=rng, bound=5))
        assert index_oracle(a) and linalg.rank(a.mat) == rank
        assert not index_oracle(g) and linalg.rank(g.mat) == rank


def test_bound_respected_by_core_block():
    rng = randmat.make_rng(0)
    for _ in range(50):
        c = randmat.random_invertible(3, rng, bound=2)
        assert all(abs(x) <= 2 for x in c.entries)


def test_unimodular_has_integer_inverse():
    rng = randmat.make_rng(5)
    for n in range(0, 5):
        p = randmat.random_unimodular(n, rng)
        inv = linalg.inverse(p)
        assert all(x.denominator == 1 for x in inv.entries)


def test_random_helpers():
    rng = randmat.make_rng(1)
    for _ in range(30):
        phi = Morphism.of(randmat.random_rect(3, 4, rng.randint(0, 3), rng))
        assert is_inner_inverse(phi, randmat.random_inner_inverse(phi, rng))
        eta = randmat.random_annihilator(phi, rng)
        assert (eta @ phi).is_zero() and eta.cod == kernel(phi).cod


def test_gaussian_entries_nontrivial():
    m = randmat.gen_random(3, 3, "1", seed=0, field=QI)
    assert any(x.im != 0 for x in m.entries)
