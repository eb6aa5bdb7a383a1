import random

import pytest

from quasitwist import linalg
from quasitwist.decoder import (
    DECODING_FAILURE,
    DecoderConfig,
    build_syndrome_matrix,
    chien_search,
    compute_syndromes,
    decode,
    decode_polyvec,
    decomposition_matrices,
    evaluate_errors,
    solve_key_equations,
    star_product,
)
from quasitwist.errors import InadmissibleEigenvector, ShapeError
from quasitwist.galois import prime_field
from quasitwist.oracle import nearest_codeword
from quasitwist.polyring import Poly, QuotientPolyVector, phi, phi_inv
from tests.support import (
    add_words,
    diagonal_instance,
    frobenius_index_orbits,
    minimal_recurrence_bruteforce,
    plant_error,
    random_codeword,
    random_decodable_instance,
    recurrence_holds,
)


@pytest.fixture(scope="module")
def example_received(f3):
    # r(X) = (0, X^8)
    return QuotientPolyVector(f3, 10, 2, 2, [Poly.zero(f3), Poly.monomial(f3, 1, 8)])


class TestSyndromes:
    def test_paper_powers(self, example_cfg, example_received, f81):
        syn = compute_syndromes(example_received, example_cfg)
        assert [f81.log(v) for v in syn.values[0]] == [66, 50, 34]

    def test_codeword_syndromes_vanish(self, example_code, example_cfg, f3):
        rng = random.Random(21)
        for _ in range(20):
            cw = random_codeword(rng, example_code)
            vec = phi(cw, 10, 2, 2, f3)
            assert compute_syndromes(vec, example_cfg).all_zero()

    def test_linearity(self, example_code, example_cfg, example_received, f3):
        rng = random.Random(22)
        cw = random_codeword(rng, example_code)
        r = add_words(f3, cw, phi_inv(example_received))
        syn_sum = compute_syndromes(phi(r, 10, 2, 2, f3), example_cfg)
        syn_err = compute_syndromes(example_received, example_cfg)
        assert syn_sum.values == syn_err.values

    def test_shape_mismatch(self, example_cfg, f3):
        bad = QuotientPolyVector(f3, 5, 2, 2, [Poly.zero(f3)] * 2)
        with pytest.raises(ShapeError):
            compute_syndromes(bad, example_cfg)


class TestKeyEquations:
    def test_paper_single_sequence(self, example_cfg, example_received, f81):
        syn = compute_syndromes(example_received, example_cfg)
        loc = solve_key_equations(syn, example_cfg)
        assert loc.degree == 1
        # Lambda(X) = 1 - a^64 X
        assert loc.poly[0] == 1
        assert loc.poly[1] == f81.neg(f81.g_pow(64))

    def test_zero_syndromes(self, example_cfg, example_code, f3):
        zero = phi([0] * 20, 10, 2, 2, f3)
        syn = compute_syndromes(zero, example_cfg)
        loc = solve_key_equations(syn, example_cfg)
        assert loc.poly == Poly(example_cfg.big, [1])
        assert loc.length == 0

    def test_two_errors_product_form(self, f3):
        # diagonal instance over F_3, m = 7: eps can reach 2+
        inst = _seven_instance(f3)
        code, cfg = inst
        assert cfg.eps >= 2
        big = cfg.big
        rng = random.Random(5)
        for _ in range(10):
            e_word, locations = plant_error(rng, code, cfg, 2)
            vec = phi(e_word, code.m, code.ell, code.lam, f3)
            syn = compute_syndromes(vec, cfg)
            loc = solve_key_equations(syn, cfg)
            expected = Poly(big, [1])
            for i in locations:
                expected = expected * Poly(big, [1, big.neg(big.pow(cfg.xi_n1, i))])
            assert loc.poly == expected

    def test_against_bruteforce_recurrence(self, f3):
        inst = _seven_instance(f3)
        code, cfg = inst
        big = cfg.big
        rng = random.Random(77)
        for _ in range(40):
            wt = rng.randrange(0, cfg.eps + 1)
            e_word, _ = plant_error(rng, code, cfg, wt)
            vec = phi(e_word, code.m, code.ell, code.lam, f3)
            syn = compute_syndromes(vec, cfg)
            loc = solve_key_equations(syn, cfg)
            l_brute, _poly = minimal_recurrence_bruteforce(syn.values, big)
            assert loc.length == l_brute
            assert recurrence_holds(loc.poly, loc.length, syn.values, big)

    def test_multisequence_joint(self, f3):
        # s >= 1: several syndrome sequences share one recurrence
        inst = _seven_instance(f3, want_s=1)
        code, cfg = inst
        assert cfg.s >= 1
        big = cfg.big
        rng = random.Random(30)
        for _ in range(20):
            e_word, locations = plant_error(rng, code, cfg, min(2, cfg.eps))
            vec = phi(e_word, code.m, code.ell, code.lam, f3)
            syn = compute_syndromes(vec, cfg)
            loc = solve_key_equations(syn, cfg)
            l_brute, _ = minimal_recurrence_bruteforce(syn.values, big)
            assert loc.length == l_brute
            assert recurrence_holds(loc.poly, loc.length, syn.values, big)
            found = chien_search(loc, cfg)
            assert list(found) == locations


def _seven_instance(f3, want_s: int = 0):
    sp_orbits = None
    # f = (X^7 - 1)/(X - 1): roots at indices 1..6
    from quasitwist.galois import find_splitting_data

    sp = find_splitting_data(f3, 7, 1)
    orbits = [o for o in frobenius_index_orbits(sp) if 0 not in o]
    if want_s == 0:
        grid = (1, 1, 1, 0, 5, (1, 2, 3, 4))
    else:
        # delta = 4, s = 1, n1 = 1, n2 = 3: {1,2,3} + {4,5,6}
        grid = (1, 1, 3, 1, 4, (1, 2, 3, 4, 5, 6))
    return diagonal_instance(f3, 7, 1, 2, orbits, sp=sp, grid=grid)


class TestChien:
    def test_paper_root(self, example_cfg, f81):
        from quasitwist.decoder import ErrorLocator

        lam_poly = Poly(f81, [1, f81.neg(f81.g_pow(64))])
        loc = ErrorLocator(poly=lam_poly, length=1)
        assert chien_search(loc, example_cfg) == (8,)

    def test_trivial_locator(self, example_cfg, f81):
        from quasitwist.decoder import ErrorLocator

        assert chien_search(ErrorLocator(poly=Poly(f81, [1]), length=0), example_cfg) == ()

    def test_planted_roots(self, example_cfg, f81):
        from quasitwist.decoder import ErrorLocator

        want = (3, 7)
        poly = Poly(f81, [1])
        for i in want:
            poly = poly * Poly(f81, [1, f81.neg(big_pow := f81.pow(example_cfg.xi_n1, i))])
        loc = ErrorLocator(poly=poly, length=2)
        assert chien_search(loc, example_cfg) == want


class TestEvaluate:
    def test_paper_values(self, example_cfg, example_received, f81):
        syn = compute_syndromes(example_received, example_cfg)
        loc = solve_key_equations(syn, example_cfg)
        locations = chien_search(loc, example_cfg)
        from quasitwist.decoder import _evaluate_errors_full

        ev = _evaluate_errors_full(syn, loc, locations, example_cfg)
        # E_8 = a^50 so that (alpha xi^6)^8 E_8 = a^16 a^50 = a^66 = S_0
        assert [f81.log(v) for v in ev.E_values] == [50]
        assert [f81.log(v) for v in ev.Y_diag] == [66]
        assert ev.errors == {8: (0, 1)}

    def test_empty(self, example_cfg, example_code, f3):
        zero = phi([0] * 20, 10, 2, 2, f3)
        syn = compute_syndromes(zero, example_cfg)
        loc = solve_key_equations(syn, example_cfg)
        assert evaluate_errors(syn, loc, (), example_cfg) == {}

    def test_planted_two_errors_recovered(self, f3):
        code, cfg = _seven_instance(f3)
        rng = random.Random(8)
        for _ in range(15):
            e_word, locations = plant_error(rng, code, cfg, 2, per_location_max=2)
            vec = phi(e_word, code.m, code.ell, code.lam, f3)
            syn = compute_syndromes(vec, cfg)
            loc = solve_key_equations(syn, cfg)
            found = chien_search(loc, cfg)
            errors = evaluate_errors(syn, loc, found, cfg)
            rebuilt = [[0] * code.m for _ in range(code.ell)]
            for i, vecj in errors.items():
                for j, val in enumerate(vecj):
                    rebuilt[j][i] = val
            assert phi(e_word, code.m, code.ell, code.lam, f3).polys == tuple(
                Poly(f3, r) for r in rebuilt)


class TestDecode:
    def test_paper_example(self, example_code, example_cfg, example_received):
        word = phi_inv(example_received)
        out = decode(word, example_code, example_cfg)
        assert out == (0,) * 20

    def test_no_error(self, example_code, example_cfg):
        rng = random.Random(3)
        cw = random_codeword(rng, example_code)
        assert decode(cw, example_code, example_cfg) == cw

    def test_weight_one_random_vs_oracle(self, example_code, example_cfg, f3):
        rng = random.Random(14)
        for _ in range(20):
            cw = random_codeword(rng, example_code)
            e_word, _ = plant_error(rng, example_code, example_cfg, 1)
            r = add_words(f3, cw, e_word)
            got = decode(r, example_code, example_cfg)
            oracle_cw, dist = nearest_codeword(example_code, r)
            assert got == oracle_cw == cw
            assert dist <= 1

    def test_decoding_failure_beyond_capacity(self, example_code, example_cfg, f3):
        rng = random.Random(15)
        failures = 0
        for _ in range(30):
            e_word, _ = plant_error(rng, example_code, example_cfg, 3)
            out = decode(e_word, example_code, example_cfg)
            if out is DECODING_FAILURE:
                failures += 1
        assert failures > 0  # beyond-capacity errors are mostly rejected

    def test_trace_exposes_both_error_value_forms(self, example_code, example_cfg,
                                                  example_received, f81):
        out = decode(phi_inv(example_received), example_code, example_cfg,
                     with_trace=True)
        assert out.ok
        assert out.trace.E_powers == ("a^50",)
        assert out.trace.Y_powers == ("a^66",)
        assert out.trace.syndrome_powers[0] == ("a^66", "a^50", "a^34")
        assert out.trace.errors == {8: (0, 1)}


class TestRandomInstances:
    def test_decode_matches_oracle(self, subtests=None):
        rng = random.Random(1234)
        total_trials = 0
        for _ in range(6):
            code, cfg = random_decodable_instance(rng)
            for _ in range(10):
                n_loc = rng.randrange(0, cfg.eps + 1)
                cw = random_codeword(rng, code)
                e_word, _ = plant_error(rng, code, cfg, n_loc)
                wt = sum(1 for x in e_word if x)
                if wt > cfg.eps:
                    continue
                r = add_words(code.field, cw, e_word)
                got = decode(r, code, cfg)
                assert got == cw, f"decode failed on {code} cfg={cfg}"
                oracle_cw, _ = nearest_codeword(code, r)
                assert got == oracle_cw
                total_trials += 1
        assert total_trials >= 30


class TestSyndromeMatrix:
    def test_star_product_base_case(self, f81):
        assert star_product([[5]], [[7]], f81) == [[f81.mul(5, 7)]]

    def test_star_reproduces_x(self, f3):
        # X = A * B for the grid factor matrices, on an s=1, delta=4, eps=1 instance
        code, cfg = _seven_instance(f3, want_s=1)
        big = cfg.big
        eps = 1
        locations = [1]
        x_mat, _y, _xt = decomposition_matrices(locations, [1], cfg, eps)
        a_mat = [[big.pow(big.pow(cfg.xi_n2, t), i_k) for i_k in locations]
                 for t in range(cfg.s + 1)]
        b_mat = [[big.pow(big.pow(cfg.xi_n1, i), i_k) for i_k in locations]
                 for i in range(cfg.delta - 1 - eps)]
        assert star_product(a_mat, b_mat, big) == x_mat

    def test_rank_equals_error_count(self, f3):
        code, cfg = _seven_instance(f3)
        big = cfg.big
        rng = random.Random(99)
        for _ in range(20):
            eps0 = rng.randrange(1, cfg.eps + 1)
            e_word, _ = plant_error(rng, code, cfg, eps0)
            syn = compute_syndromes(phi(e_word, code.m, code.ell, code.lam, f3), cfg)
            s_mat = build_syndrome_matrix(syn, eps0, cfg)
            assert linalg.rank(big, s_mat) == eps0

    def test_decomposition_identity(self, f3):
        code, cfg = _seven_instance(f3, want_s=1)
        big = cfg.big
        rng = random.Random(101)
        for _ in range(10):
            eps0 = min(2, cfg.eps)
            e_word, locations = plant_error(rng, code, cfg, eps0)
            vec = phi(e_word, code.m, code.ell, code.lam, f3)
            syn = compute_syndromes(vec, cfg)
            # aggregated values E_i = sum_j e_{i,j} v_j
            e_vals = []
            for i in locations:
                acc = 0
                for j, p in enumerate(vec.polys):
                    acc = big.add(acc, big.mul(p[i], cfg.v[j]))
                e_vals.append(acc)
            s_mat = build_syndrome_matrix(syn, eps0, cfg)
            x_mat, y_mat, xt_mat = decomposition_matrices(locations, e_vals, cfg, eps0)
            prod = linalg.matmul(big, linalg.matmul(big, x_mat, y_mat), xt_mat)
            assert prod == s_mat

    def test_shape_error(self, example_cfg, example_received):
        syn = compute_syndromes(example_received, example_cfg)
        with pytest.raises(ShapeError):
            build_syndrome_matrix(syn, example_cfg.delta - 1, example_cfg)


class TestConfigValidation:
    def test_dependent_eigenvector_rejected(self, f3):
        from quasitwist.galois import find_splitting_data

        sp = find_splitting_data(f3, 7, 1)
        orbits = [o for o in frobenius_index_orbits(sp) if 0 not in o]
        code, _cfg = diagonal_instance(f3, 7, 1, 2, orbits, sp=sp,
                                       grid=(1, 1, 1, 0, 5, (1, 2, 3, 4)))
        with pytest.raises(InadmissibleEigenvector):
            DecoderConfig(code, 1, 1, 1, 0, 5, v=(1, 2))  # both in F_3

    def test_non_eigenvector_rejected(self, example_code, f81):
        from quasitwist.errors import DomainError

        with pytest.raises(DomainError):
            DecoderConfig(example_code, 6, 1, 1, 0, 4, v=(1, 1))
