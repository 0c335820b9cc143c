// SPDX-License-Identifier: Apache-2.0
//
// mmce - wideband mmWave hybrid MIMO channel estimation with low-precision ADCs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmce/estimator.hpp"
#include "mmce/frontend.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace mmce;

TEST_CASE("OMP finds a single active atom in one iteration")
{
    auto g = rng::engine(1);
    cmat sensing = rng::complex_normal_mat(g, 12, 20);
    cvec y = sensing.col(7) * cxd(0.3, -1.1);
    auto sel = omp_support(y, sensing, 1e-12);
    REQUIRE(sel.size() == 1);
    CHECK(sel.indices[0] == 7);
}

TEST_CASE("OMP on zero observation returns empty support")
{
    auto g = rng::engine(2);
    cmat sensing = rng::complex_normal_mat(g, 6, 10);
    auto sel = omp_support(cvec::Zero(6), sensing, 0.0);
    CHECK(sel.size() == 0);
}

TEST_CASE("OMP recovers a noise-free 3-sparse signal and matches exhaustive search")
{
    // Small instance so the C(16,3) subset search is the oracle.
    const int dim = 16;
    const int rows = 14;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto g = rng::engine(1000 + seed);
        cmat sensing = rng::complex_normal_mat(g, rows, dim);

        std::vector<int> truth = {static_cast<int>(g() % 5), 5 + static_cast<int>(g() % 5),
                                  10 + static_cast<int>(g() % 6)};
        cvec h = cvec::Zero(dim);
        for (int idx : truth)
            h[idx] = rng::complex_normal(g);
        cvec y = sensing * h;

        auto sel = omp_support(y, sensing, 1e-18);
        REQUIRE(sel.size() == 3);
        CHECK(std::includes(sel.indices.begin(), sel.indices.end(), truth.begin(), truth.end()));

        // Exhaustive search over all 3-subsets for the least-squares residual.
        double best = 1e300;
        std::vector<int> best_set;
        for (int a = 0; a < dim; ++a)
            for (int b = a + 1; b < dim; ++b)
                for (int c = b + 1; c < dim; ++c)
                {
                    cmat cols(rows, 3);
                    cols.col(0) = sensing.col(a);
                    cols.col(1) = sensing.col(b);
                    cols.col(2) = sensing.col(c);
                    cvec coeff = cols.colPivHouseholderQr().solve(y);
                    double res = (y - cols * coeff).squaredNorm();
                    if (res < best)
                    {
                        best = res;
                        best_set = {a, b, c};
                    }
                }
        CHECK(best_set == sel.indices);
    }
}

TEST_CASE("default threshold is the total effective-noise variance")
{
    EffectiveNoiseStats awgn{1.0, 8.0};
    CHECK(default_threshold(awgn) == 8.0);

    SystemConfig cfg;
    cfg.n_t = 8;
    cfg.n_r = 8;
    cfg.n_rft = 4;
    cfg.n_rfr = 2;
    cfg.k = 4;
    cfg.n_c = 2;
    cfg.m = 4;
    auto bm = bussgang_linearize(QuantizerModel::make(1), cfg);
    CHECK(default_threshold(bm.stats) ==
          doctest::Approx(cfg.m * cfg.n_rfr * 0.6366 * (1.0 + 0.3634 * 4.0)).epsilon(1e-4));

    EffectiveNoiseStats silent{0.0, 0.0};
    CHECK(default_threshold(silent) == 0.0);
}

TEST_CASE("LMMSE combiner diagonal and noiseless limits")
{
    const int n = 6;
    cmat eye = cmat::Identity(n, n);
    auto w = lmmse_combiner(eye, 0.0, 0.5, 1.0);
    CHECK((w.matrix - eye / 1.5).norm() < 1e-12);

    auto g = rng::engine(3);
    cmat omega = rng::complex_normal_mat(g, n, n);
    auto w0 = lmmse_combiner(omega, 0.0, 0.0, 1.0);
    // Noiseless square case: W^H = Omega^-1, so W = (Omega^H)^-1.
    CHECK((w0.matrix.adjoint() * omega - eye).norm() < 1e-9);
}

TEST_CASE("LMMSE combiner satisfies the stationarity condition")
{
    auto g = rng::engine(4);
    cmat omega = rng::complex_normal_mat(g, 8, 4);
    double eta = 0.1175, sig_e = 0.5, sig_h = 1.0;
    auto w = lmmse_combiner(omega, eta, sig_e, sig_h);
    cmat grad = mse_gradient(w.matrix, omega, eta, sig_h, sig_e);
    CHECK(grad.norm() < 1e-9 * w.matrix.norm());
}

TEST_CASE("estimate_channel embeds on the support and inverts noiseless data")
{
    auto dict = build_dictionaries(4, 4);
    SystemConfig cfg;
    cfg.n_t = 4;
    cfg.n_r = 4;
    cfg.n_rft = 2;
    cfg.n_rfr = 2;
    cfg.k = 4;
    cfg.n_c = 2;
    cfg.m = 8; // M N_RFr = 16 = N_r N_t
    cfg.noise_var = 0.0;

    auto pilots = generate_pilots(cfg, 0);
    auto words = generate_analog_codewords(cfg, 11);
    cmat sensing = sensing_matrix(pilots, words, dict, 0);
    auto ch = generate_sparse_channel(cfg, 2, 13);
    cvec h_v = virtual_channel(ch.freq_responses[0], dict);
    cvec y = sensing * h_v;

    auto support = SupportSelection::full(16);
    auto w = lmmse_combiner(sensing, 0.0, 0.0, 1.0);
    auto res = estimate_channel(y, w, support, dict.kron_projection);

    cvec truth = Eigen::Map<cvec>(ch.freq_responses[0].data(), 16);
    CHECK((res.h_hat - truth).norm() < 1e-8 * truth.norm());

    // Zero observation maps to the zero estimate.
    auto zero = estimate_channel(cvec::Zero(16), w, support, dict.kron_projection);
    CHECK(zero.h_hat.norm() == 0.0);
}

TEST_CASE("off-support entries of the embedded estimate are exactly zero")
{
    auto dict = build_dictionaries(2, 2);
    SupportSelection support;
    support.indices = {1, 3};

    auto g = rng::engine(6);
    cmat omega = rng::complex_normal_mat(g, 4, 2);
    auto w = lmmse_combiner(omega, 0.0, 0.1, 1.0);
    cvec y = rng::complex_normal_vec(g, 4);
    auto res = estimate_channel(y, w, support, dict.kron_projection);

    // Undo the unitary projection to recover the embedded virtual vector.
    cvec embedded = dict.kron_projection.adjoint() * res.h_hat;
    CHECK(std::abs(embedded[0]) < 1e-14);
    CHECK(std::abs(embedded[2]) < 1e-14);
    CHECK(std::abs(embedded[1] - res.h_v_nz_hat[0]) < 1e-14);
    CHECK(std::abs(embedded[3] - res.h_v_nz_hat[1]) < 1e-14);
}

TEST_CASE("analytic MSE of the zero combiner is the prior variance")
{
    auto g = rng::engine(7);
    cmat omega = rng::complex_normal_mat(g, 8, 3);
    cmat w = cmat::Zero(8, 3);
    CHECK(analytic_mse(w, omega, 0.1, 2.0, 0.5, 3) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("analytic MSE matches Monte Carlo under the linearized model")
{
    auto g = rng::engine(8);
    const int rows = 8, nv = 4;
    cmat omega = rng::complex_normal_mat(g, rows, nv);
    cmat w = rng::complex_normal_mat(g, rows, nv) * 0.2;
    double eta = 0.1175, sig_h = 1.0, sig_e = 0.5;
    double gain = 1.0 - eta;

    double acc = 0.0;
    const int trials = 20000;
    for (int t = 0; t < trials; ++t)
    {
        cvec h = rng::complex_normal_vec(g, nv, sig_h);
        cvec e = rng::complex_normal_vec(g, rows, sig_e);
        cvec est = w.adjoint() * (gain * (omega * h) + e);
        acc += (est - h).squaredNorm();
    }
    acc /= trials;
    CHECK(acc == doctest::Approx(analytic_mse(w, omega, eta, sig_h, sig_e, nv)).epsilon(0.03));
}

TEST_CASE("optimal combiner is a local and perturbation minimum")
{
    auto g = rng::engine(9);
    cmat omega = rng::complex_normal_mat(g, 8, 4);
    double eta = 0.3634, sig_h = 1.3, sig_e = 0.7;
    auto w = lmmse_combiner(omega, eta, sig_e, sig_h);
    double base = analytic_mse(w.matrix, omega, eta, sig_h, sig_e, 4);

    for (int i = 0; i < 100; ++i)
    {
        cmat delta = rng::complex_normal_mat(g, 8, 4) * 0.1;
        CHECK(analytic_mse(w.matrix + delta, omega, eta, sig_h, sig_e, 4) >= base - 1e-12);
    }
}

TEST_CASE("MSE gradient closed form and finite differences")
{
    auto g = rng::engine(10);
    cmat omega = rng::complex_normal_mat(g, 6, 3);
    double eta = 0.03454, sig_h = 0.9, sig_e = 0.4;

    cmat zero = cmat::Zero(6, 3);
    CHECK((mse_gradient(zero, omega, eta, sig_h, sig_e) + (1.0 - eta) * sig_h * omega).norm() <
          1e-12);

    cmat w = rng::complex_normal_mat(g, 6, 3);
    cmat grad = mse_gradient(w, omega, eta, sig_h, sig_e);

    // d(MSE) = 2 Re Tr(grad^H dW) for Wirtinger gradient wrt conj(W).
    const double h = 1e-6;
    for (int trial = 0; trial < 8; ++trial)
    {
        Eigen::Index i = static_cast<Eigen::Index>(g() % 6);
        Eigen::Index j = static_cast<Eigen::Index>(g() % 3);
        for (int dim = 0; dim < 2; ++dim)
        {
            cmat wp = w, wm = w;
            cxd step = dim == 0 ? cxd(h, 0) : cxd(0, h);
            wp(i, j) += step;
            wm(i, j) -= step;
            double fd = (analytic_mse(wp, omega, eta, sig_h, sig_e, 3) -
                         analytic_mse(wm, omega, eta, sig_h, sig_e, 3)) /
                        (2.0 * h);
            double an = dim == 0 ? 2.0 * grad(i, j).real() : 2.0 * grad(i, j).imag();
            CHECK(fd == doctest::Approx(an).epsilon(1e-5));
        }
    }
}

TEST_CASE("conventional baselines: LS exactness and unaware reduction")
{
    auto g = rng::engine(11);
    cmat sensing = rng::complex_normal_mat(g, 8, 8);
    cvec h = rng::complex_normal_vec(g, 8);
    cvec y = sensing * h;

    auto base = conventional_baselines(y, sensing, 0.0, 1.0);
    CHECK((base.ls - h).norm() < 1e-9 * h.norm());

    // With an infinite-precision ADC the proposed combiner and the unaware
    // one share the same formula.
    double sig_v = 0.3;
    auto unaware = conventional_baselines(y, sensing, sig_v, 1.0).unaware_lmmse;
    auto proposed = lmmse_combiner(sensing, 0.0, sig_v, 1.0);
    cvec prop_est = proposed.matrix.adjoint() * y;
    CHECK((unaware - prop_est).norm() == 0.0);

    cmat deficient(6, 8);
    deficient = rng::complex_normal_mat(g, 6, 8);
    CHECK_THROWS_AS(conventional_baselines(cvec::Zero(6), deficient, 0.1, 1.0),
                    std::runtime_error);
}

TEST_CASE("invalid combiner inputs are rejected")
{
    auto g = rng::engine(12);
    cmat omega = rng::complex_normal_mat(g, 4, 2);
    CHECK_THROWS_AS(lmmse_combiner(omega, 0.0, 0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lmmse_combiner(omega, 1.0, 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(omp_support(cvec::Zero(4), omega, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(omp_support(cvec::Zero(5), omega, 0.0), std::invalid_argument);
}
