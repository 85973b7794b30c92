import random

import pytest
from hypothesis import given, settings, strategies as st

from dormantops.fp import Generic
from dormantops.hyperg import (
    GenericParameterError,
    apply,
    gauss,
    has_full_solutions,
    kernel_rank,
    matrix,
    new_operator,
    oracle_rank,
    pcurvature_sum_test,
    root_basis,
    t_set,
)


def test_three_term_chain_has_full_rank():
    op = new_operator(7, (6, 4, 2), (5, 3))
    assert sorted(t_set(op)) == [0, 1, 2]
    assert kernel_rank(op) == 3
    assert oracle_rank(op) == 3
    assert has_full_solutions(op)


def test_repeated_alpha_collapses_to_rank_one():
    """With alpha = (1, 1) both lifts land in the same gap, so only one gap is hit."""
    op = new_operator(5, (1, 1), (1,))
    assert matrix(op).diag == (4, 1, 1, 4, 0)
    assert matrix(op).superdiag == (1, 4, 4, 1)
    assert sorted(t_set(op)) == [0]
    assert kernel_rank(op) == 1
    assert oracle_rank(op) == 1
    assert root_basis(op) == [(1, 1, 1, 1, 1)]
    assert not has_full_solutions(op)


def test_rank_can_exceed_beta_count():
    """The top gap [beta_1, p+1) and bottom gap [1, beta_m') are both real gaps,
    so the rank bound is min(n', m'+1), not min(n', m')."""
    op = new_operator(5, (3, 1), (3,))
    assert sorted(t_set(op)) == [0, 1]
    assert kernel_rank(op) == 2 > min(op.n, op.m)
    assert oracle_rank(op) == 2


def test_generic_parameters_occupy_no_gap():
    op = new_operator(5, (Generic("a"), 1), (2,))
    assert sorted(t_set(op)) == [1]
    assert kernel_rank(op) == 1
    assert not op.all_fp()
    assert not has_full_solutions(op)


@pytest.mark.parametrize("fn", [matrix, oracle_rank, root_basis])
def test_oracle_paths_reject_generics(fn):
    op = new_operator(5, (Generic("a"),), (2,))
    with pytest.raises(GenericParameterError):
        fn(op)


def test_matrix_entries_follow_the_recurrence():
    op = new_operator(7, (2, 5), (3,))
    mat = matrix(op)
    for l in range(7):
        assert mat.diag[l] == -((l + 2) * (l + 5)) % 7
    for l in range(6):
        assert mat.superdiag[l] == (l + 1) * (l + 3) % 7


def test_apply_matches_matrix_action():
    op = new_operator(7, (2, 5), (3, 3))
    mat = matrix(op)
    rng = random.Random(11)
    for _ in range(20):
        vec = [rng.randrange(7) for _ in range(7)]
        assert apply(op, vec) == mat.mat_vec(vec)


def test_root_basis_size_and_annihilation():
    op = new_operator(7, (6, 4, 2), (5, 3))
    basis = root_basis(op)
    assert len(basis) == kernel_rank(op) == 3
    for vec in basis:
        assert not any(apply(op, vec))
        assert all(0 <= c < 7 for c in vec)


def test_operator_validation():
    with pytest.raises(ValueError):
        new_operator(4, (1,), (1,))
    with pytest.raises(ValueError):
        new_operator(5, (), (1,))
    with pytest.raises(ValueError):
        new_operator(5, (1,), ())
    with pytest.raises(ValueError):
        apply(new_operator(5, (1,), (1,)), [0, 0, 0])


def _gauss_reference(p, a, b, c):
    """Full solutions iff the lift of c separates the lifts of a and b."""
    at = a % p if a % p else p
    bt = b % p if b % p else p
    ct = c % p if c % p else p
    return at < ct <= bt or bt < ct <= at


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gauss_criterion_small(p):
    for a in range(p):
        for b in range(p):
            for c in range(p):
                assert has_full_solutions(gauss(p, a, b, c)) == _gauss_reference(p, a, b, c)


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_closed_form_matches_oracle(data):
    p = data.draw(st.sampled_from([3, 5, 7, 11, 13]))
    n = data.draw(st.integers(1, 4))
    m = data.draw(st.integers(1, 4))
    alpha = data.draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n))
    beta = data.draw(st.lists(st.integers(0, p - 1), min_size=m, max_size=m))
    op = new_operator(p, alpha, beta)
    rank = kernel_rank(op)
    assert rank == oracle_rank(op)
    assert rank <= min(op.n, op.m + 1)


def test_rank_depends_only_on_parameter_multisets():
    op1 = new_operator(7, (2, 5, 1), (3, 6))
    op2 = new_operator(7, (5, 1, 2), (6, 3))
    assert t_set(op1) == t_set(op2)
    assert oracle_rank(op1) == oracle_rank(op2)


def test_pcurvature_sum_test():
    assert pcurvature_sum_test((1, 2), (3,)) is True
    assert pcurvature_sum_test((Generic("a"), 2), (3,)) is False
    assert pcurvature_sum_test((1, 2), (Generic("b"),)) is False
