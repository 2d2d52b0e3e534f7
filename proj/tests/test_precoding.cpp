// SPDX-License-Identifier: Apache-2.0
//
// dfdsim: system-level simulator for distributed FD-MIMO downlink networks
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

#include "doctest.h"

#include <cmath>
#include <complex>

#include "dfdsim/channel.hpp"
#include "dfdsim/precoding.hpp"
#include "dfdsim/rng.hpp"

using namespace dfdsim;

TEST_SUITE_BEGIN("precoding");

namespace
{

// box-muller over the fully specified uniform stream
std::complex<double> randn_c(RandomStream &rng)
{
    const double u1 = std::max(rng.uniform(), 1e-18);
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * pi * u2) / std::sqrt(2.0), r * std::sin(2.0 * pi * u2) / std::sqrt(2.0)};
}

arma::cx_mat random_rows(RandomStream &rng, int k, int m, double scale = 1.0)
{
    arma::cx_mat h(k, m);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j)
            h(i, j) = scale * randn_c(rng);
    return h;
}

double cosine_similarity(const arma::cx_vec &a, const arma::cx_vec &b)
{
    return std::abs(arma::cdot(a, b)) / (arma::norm(a) * arma::norm(b));
}

// Leakage-and-noise quotient the precoder maximizes (effective noise form)
double slnr_value(const SectorChannel &ch, const std::vector<double> &power, int k,
                  const arma::cx_vec &w)
{
    const double p = power[k];
    const double sig = p * std::norm(arma::as_scalar(ch.rows.row(k) * w));
    double leak = 0.0;
    for (int j = 0; j < static_cast<int>(ch.rows.n_rows); ++j)
        if (j != k)
            leak += p * std::norm(arma::as_scalar(ch.rows.row(j) * w));
    return sig / (ch.effective_noise_w(k) + leak);
}

} // namespace

TEST_CASE("power allocation")
{
    const double total = dbm_to_watts(44.0); // 25.1188643 W
    const auto p = allocate_power(total, 24);
    REQUIRE(p.size() == 24);
    // 10^(4.4) / 24 mW each
    CHECK(p[0] * 1e3 == doctest::Approx(1046.61935).epsilon(1e-8));
    double sum = 0.0;
    for (double v : p)
        sum += v;
    CHECK(sum == doctest::Approx(total).epsilon(1e-9));

    const auto one = allocate_power(3.25, 1);
    CHECK(one.size() == 1);
    CHECK(one[0] == 3.25);

    CHECK_THROWS_AS(allocate_power(total, 0), std::domain_error);
}

TEST_CASE("K = 1 returns the matched filter")
{
    RandomStream rng(101);
    for (int m : {2, 5, 8})
    {
        SectorChannel ch;
        ch.rows = random_rows(rng, 1, m, 1e-4);
        ch.noise_power_w = 6.3e-13;
        ch.sector_power_w = 25.0;
        const PrecoderSet set = slnr_precoders(ch);
        REQUIRE(set.vectors.n_cols == 1);
        CHECK(arma::norm(set.vectors.col(0)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cosine_similarity(set.vectors.col(0), ch.rows.row(0).t()) >= 1.0 - 1e-12);
    }
}

TEST_CASE("orthogonal rows give matched filters")
{
    // (aI + sum h_j^H h_j)^-1 h_k^H = h_k^H / (a + ||h_k||^2) by orthogonality
    SectorChannel ch;
    ch.rows = arma::cx_mat(3, 6, arma::fill::zeros);
    ch.rows(0, 0) = {3e-4, 1e-4};
    ch.rows(1, 2) = {-2e-4, 5e-5};
    ch.rows(2, 4) = {1e-4, -7e-5};
    ch.noise_power_w = 6.3e-13;
    ch.sector_power_w = 25.0;

    const PrecoderSet set = slnr_precoders(ch);
    for (int k = 0; k < 3; ++k)
    {
        CHECK(arma::norm(set.vectors.col(k)) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(cosine_similarity(set.vectors.col(k), ch.rows.row(k).t()) >= 1.0 - 1e-12);
    }
}

TEST_CASE("closed form is collinear with the generalized eigenvector oracle")
{
    RandomStream rng(2024);
    for (int trial = 0; trial < 40; ++trial)
    {
        const int k_ues = 1 + static_cast<int>(rng.uniform(0.0, 6.0));
        const int m = 2 + static_cast<int>(rng.uniform(0.0, 7.0));

        SectorChannel ch;
        ch.rows = random_rows(rng, k_ues, m, 1e-4);
        ch.noise_power_w = 6.3e-13;
        ch.sector_power_w = 25.0;
        const PrecoderSet set = slnr_precoders(ch);
        const auto power = allocate_power(ch.sector_power_w, k_ues);

        for (int k = 0; k < k_ues; ++k)
        {
            const double alpha = ch.noise_power_w / power[k];
            // independent oracle: QZ generalized eigendecomposition of
            // (h_k^H h_k, alpha I + sum_{j != k} h_j^H h_j)
            arma::cx_mat a = ch.rows.row(k).t() * ch.rows.row(k);
            arma::cx_mat b(m, m, arma::fill::eye);
            b *= alpha;
            for (int j = 0; j < k_ues; ++j)
                if (j != k)
                    b += ch.rows.row(j).t() * ch.rows.row(j);

            arma::cx_vec eigval;
            arma::cx_mat l_eigvec, r_eigvec;
            REQUIRE(arma::eig_pair(eigval, l_eigvec, r_eigvec, a, b));
            const arma::uword top = arma::abs(eigval).index_max();

            CHECK(cosine_similarity(set.vectors.col(k), r_eigvec.col(top)) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("include-k and exclude-k leakage forms are collinear")
{
    RandomStream rng(555);
    for (int trial = 0; trial < 30; ++trial)
    {
        const int k_ues = 2 + static_cast<int>(rng.uniform(0.0, 4.0));
        const int m = 3 + static_cast<int>(rng.uniform(0.0, 5.0));
        const arma::cx_mat rows = random_rows(rng, k_ues, m);
        const double alpha = rng.uniform(1e-6, 1e-2);

        arma::cx_mat gram_all(m, m, arma::fill::eye);
        gram_all *= alpha;
        for (int j = 0; j < k_ues; ++j)
            gram_all += rows.row(j).t() * rows.row(j);

        for (int k = 0; k < k_ues; ++k)
        {
            const arma::cx_mat gram_excl = gram_all - rows.row(k).t() * rows.row(k);
            const arma::cx_vec w_inc = arma::solve(gram_all, rows.row(k).t());
            const arma::cx_vec w_exc = arma::solve(gram_excl, rows.row(k).t());
            CHECK(cosine_similarity(w_inc, w_exc) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("SLNR optimality under random unit perturbations")
{
    RandomStream rng(31337);
    SectorChannel ch;
    ch.rows = random_rows(rng, 4, 6, 1e-4);
    ch.noise_power_w = 6.3e-13;
    ch.sector_power_w = 25.0;
    const PrecoderSet set = slnr_precoders(ch);
    const auto power = allocate_power(ch.sector_power_w, 4);

    for (int k = 0; k < 4; ++k)
    {
        const double best = slnr_value(ch, power, k, set.vectors.col(k));
        for (int t = 0; t < 1000; ++t)
        {
            arma::cx_vec w(6);
            for (int i = 0; i < 6; ++i)
                w(i) = randn_c(rng);
            w /= arma::norm(w);
            CHECK(slnr_value(ch, power, k, w) <= best * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("per-UE effective noise: uniform vector matches scalar path")
{
    RandomStream rng(808);
    SectorChannel base;
    base.rows = random_rows(rng, 5, 7, 1e-4);
    base.noise_power_w = 1e-12;
    base.sector_power_w = 10.0;

    SectorChannel uniform = base;
    uniform.per_ue_effective_noise_w = arma::vec(5, arma::fill::value(1e-12));

    const PrecoderSet a = slnr_precoders(base);
    const PrecoderSet b = slnr_precoders(uniform);
    for (int k = 0; k < 5; ++k)
        CHECK(cosine_similarity(a.vectors.col(k), b.vectors.col(k)) >= 1.0 - 1e-12);

    // heterogeneous effective noise still matches the eigen oracle per UE
    SectorChannel mixed = base;
    mixed.per_ue_effective_noise_w = arma::vec{1e-12, 3e-8, 5e-10, 2e-7, 1e-9};
    const PrecoderSet c = slnr_precoders(mixed);
    const auto power = allocate_power(mixed.sector_power_w, 5);
    for (int k = 0; k < 5; ++k)
    {
        const double alpha = mixed.per_ue_effective_noise_w(k) / power[k];
        arma::cx_mat b_mat(7, 7, arma::fill::eye);
        b_mat *= alpha;
        for (int j = 0; j < 5; ++j)
            if (j != k)
                b_mat += mixed.rows.row(j).t() * mixed.rows.row(j);
        arma::cx_vec eigval;
        arma::cx_mat l_eigvec, r_eigvec;
        REQUIRE(arma::eig_pair(eigval, l_eigvec, r_eigvec,
                               arma::cx_mat(mixed.rows.row(k).t() * mixed.rows.row(k)), b_mat));
        const arma::uword top = arma::abs(eigval).index_max();
        CHECK(cosine_similarity(c.vectors.col(k), r_eigvec.col(top)) >= 1.0 - 1e-9);
    }

    SectorChannel bad = base;
    bad.per_ue_effective_noise_w = arma::vec{1.0, 1.0, 1.0}; // wrong length
    CHECK_THROWS_AS(slnr_precoders(bad), std::invalid_argument);
}

TEST_CASE("unit norms and power sum on every output")
{
    RandomStream rng(6060);
    for (int trial = 0; trial < 20; ++trial)
    {
        const int k_ues = 1 + static_cast<int>(rng.uniform(0.0, 8.0));
        const int m = 2 + static_cast<int>(rng.uniform(0.0, 8.0)); // K > M allowed
        SectorChannel ch;
        ch.rows = random_rows(rng, k_ues, m, 1e-3);
        ch.noise_power_w = 4e-13;
        ch.sector_power_w = rng.uniform(1.0, 30.0);
        const PrecoderSet set = slnr_precoders(ch);

        double sum = 0.0;
        for (int k = 0; k < k_ues; ++k)
        {
            CHECK(arma::norm(set.vectors.col(k)) == doctest::Approx(1.0).epsilon(1e-12));
            sum += set.per_ue_power_w[k];
        }
        CHECK(sum == doctest::Approx(ch.sector_power_w).epsilon(1e-9));
    }
}

TEST_CASE("matched-filter direction is invariant to a common channel scale")
{
    RandomStream rng(99);
    SectorChannel ch;
    ch.rows = random_rows(rng, 1, 5, 1e-4);
    ch.noise_power_w = 6.3e-13;
    ch.sector_power_w = 25.0;
    const PrecoderSet a = slnr_precoders(ch);

    SectorChannel scaled = ch;
    scaled.rows *= std::complex<double>(0.3, -1.7);
    const PrecoderSet b = slnr_precoders(scaled);
    CHECK(cosine_similarity(a.vectors.col(0), b.vectors.col(0)) >= 1.0 - 1e-9);
}

TEST_CASE("conjugate precoder")
{
    arma::cx_rowvec h(4, arma::fill::zeros);
    h(0) = 1.0;
    const arma::cx_vec w = conjugate_precoder(h);
    CHECK(std::abs(w(0) - std::complex<double>(1.0, 0.0)) < 1e-15);
    CHECK(arma::norm(w) == doctest::Approx(1.0).epsilon(1e-15));

    RandomStream rng(404);
    for (int trial = 0; trial < 50; ++trial)
    {
        arma::cx_rowvec v(6);
        for (int i = 0; i < 6; ++i)
            v(i) = randn_c(rng);
        const arma::cx_vec wv = conjugate_precoder(v);
        // Cauchy-Schwarz equality at the matched filter
        CHECK(std::abs(arma::as_scalar(v * wv)) == doctest::Approx(arma::norm(v)).epsilon(1e-12));

        // unit-modulus scaling leaves the received power unchanged
        const arma::cx_rowvec v2 = v * std::polar(1.0, 1.234);
        const arma::cx_vec wv2 = conjugate_precoder(v2);
        CHECK(std::norm(arma::as_scalar(v2 * wv2)) ==
              doctest::Approx(std::norm(arma::as_scalar(v * wv))).epsilon(1e-12));
    }

    arma::cx_rowvec zero(3, arma::fill::zeros);
    CHECK_THROWS_AS(conjugate_precoder(zero), std::domain_error);
}

TEST_SUITE_END();
