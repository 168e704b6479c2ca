import pytest

from hesslab import jets


class TestDimensions:
    @pytest.mark.parametrize("n,k,expect", [(3, 0, 6), (2, 1, 9), (4, 0, 10)])
    def test_metric_jets(self, n, k, expect):
        assert jets.jet_dim_metric(n, k) == expect

    @pytest.mark.parametrize("n,k,expect", [(2, 0, 18), (3, 0, 40)])
    def test_hessian_data_jets(self, n, k, expect):
        assert jets.jet_dim_hessian_data(n, k) == expect

    def test_monotone_in_order(self):
        for n in (2, 3, 4):
            dims = [jets.jet_dim_hessian_data(n, k) for k in range(10)]
            assert dims == sorted(dims)
            dims = [jets.jet_dim_metric(n, k) for k in range(10)]
            assert dims == sorted(dims)

    def test_input_validation(self):
        with pytest.raises(ValueError):
            jets.jet_dim_metric(1, 0)
        with pytest.raises(ValueError):
            jets.jet_dim_metric(2, -1)


class TestCrossover:
    def test_n3_crossover_at_12(self):
        report = jets.crossover(3, 50)
        assert report.crossover == 12
        assert report.monotone_after_crossover

    def test_n3_closed_form_oracle(self):
        # for n=3 the deficit sign reduces to 3(k+1)(k+2) > 2(k+4)(k+5)
        for k in range(30):
            direct = jets.deficit(3, k) > 0
            inequality = 3 * (k + 1) * (k + 2) > 2 * (k + 4) * (k + 5)
            assert direct == inequality

    def test_n2_never_positive(self):
        report = jets.crossover(2, 200)
        assert report.crossover is None
        assert all(row[3] < 0 for row in report.rows)

    def test_n4_golden_crossover(self):
        assert jets.crossover(4, 50).crossover == 9

    def test_growth_exponents_near_dimension(self):
        report = jets.crossover(3, 50)
        # Taylor-coefficient counts grow like k^n; estimates must be close
        assert 2.5 < report.growth_exponent_metric < 3.5
        assert 2.5 < report.growth_exponent_hessian < 3.5

    def test_report_serializes(self):
        import json
        doc = jets.crossover(3, 10).to_json()
        json.dumps(doc)
        assert "formula_note" in doc


class TestFactoredDeficit:
    def test_exact_identity_all_n_and_k(self):
        for n in range(2, 9):
            for k in range(31):
                assert 2 * jets.deficit(n, k) == jets.deficit_factored_twice(n, k)

    def test_two_dimensional_factor_vanishes(self):
        # the (n-2) factor in the factored form explains n=2: the remaining
        # terms are strictly negative binomials
        for k in range(20):
            assert jets.deficit_factored_twice(2, k) < 0

    def test_big_integer_regime(self):
        # binomials far beyond 64-bit range must stay exact
        val = jets.jet_dim_metric(8, 2000)
        assert val > 2 ** 63
        assert 2 * jets.deficit(8, 2000) == jets.deficit_factored_twice(8, 2000)
