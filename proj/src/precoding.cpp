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

#include "dfdsim/precoding.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace dfdsim
{

namespace
{

// Results must be byte-identical between runs no matter how the drop-level
// workers are scheduled, so keep the BLAS backing LAPACK single-threaded.
// Must run before the first BLAS call; harmless when the BLAS is not OpenBLAS.
std::once_flag blas_once;
void ensure_sequential_blas()
{
    std::call_once(blas_once, [] { setenv("OPENBLAS_NUM_THREADS", "1", 0); });
}

} // namespace

std::vector<double> allocate_power(double sector_power_w, int k, PowerPolicy policy)
{
    if (k < 1)
        throw std::domain_error("allocate_power: K must be >= 1");
    if (sector_power_w <= 0.0)
        throw std::domain_error("allocate_power: sector power must be positive");
    (void)policy; // equal is the only policy
    return std::vector<double>(k, sector_power_w / k);
}

PrecoderSet slnr_precoders(const SectorChannel &ch)
{
    ensure_sequential_blas();

    const int k_ues = static_cast<int>(ch.rows.n_rows);
    const int m = static_cast<int>(ch.rows.n_cols);
    if (k_ues < 1 || m < 1)
        throw std::invalid_argument("slnr_precoders: empty sector channel");
    if (ch.noise_power_w <= 0.0)
        throw std::invalid_argument("slnr_precoders: noise power must be positive");

    if (ch.per_ue_effective_noise_w.n_elem != 0 &&
        static_cast<int>(ch.per_ue_effective_noise_w.n_elem) != k_ues)
        throw std::invalid_argument("slnr_precoders: effective-noise vector length must equal K");
    if (ch.per_ue_effective_noise_w.n_elem != 0 && ch.per_ue_effective_noise_w.min() <= 0.0)
        throw std::invalid_argument("slnr_precoders: effective noise must be positive");

    PrecoderSet out;
    out.per_ue_power_w = allocate_power(ch.sector_power_w, k_ues);

    const arma::cx_mat gram = ch.rows.t() * ch.rows; // sum_j h_j^H h_j

    bool uniform_alpha = ch.per_ue_effective_noise_w.n_elem == 0;
    if (!uniform_alpha)
        uniform_alpha = ch.per_ue_effective_noise_w.min() == ch.per_ue_effective_noise_w.max();

    arma::cx_mat w;
    if (uniform_alpha)
    {
        // One regularizer for all UEs: a single M x M solve produces every
        // precoder. The regularized Gram is Hermitian positive definite
        // (alpha > 0), never singular.
        const double alpha = ch.effective_noise_w(0) / out.per_ue_power_w[0];
        arma::cx_mat reg = gram;
        reg.diag() += alpha;
        w = arma::solve(reg, ch.rows.t(), arma::solve_opts::likely_sympd);
    }
    else
    {
        // Per-UE regularizers share one Hermitian eigendecomposition:
        // (gram + a_k I)^-1 h_k^H = U diag(1/(lambda + a_k)) U^H h_k^H
        arma::vec eigval;
        arma::cx_mat eigvec;
        if (!arma::eig_sym(eigval, eigvec, gram))
            throw std::runtime_error("slnr_precoders: eigendecomposition failed");
        arma::cx_mat b = eigvec.t() * ch.rows.t(); // M x K
        for (int k = 0; k < k_ues; ++k)
        {
            const double alpha = ch.effective_noise_w(k) / out.per_ue_power_w[k];
            b.col(k) /= arma::conv_to<arma::cx_vec>::from(eigval + alpha);
        }
        w = eigvec * b;
    }

    for (int k = 0; k < k_ues; ++k)
    {
        const double n = arma::norm(w.col(k));
        if (!(n > 0.0))
            throw std::runtime_error("slnr_precoders: zero precoder (zero channel row?)");
        w.col(k) /= n;
    }
    out.vectors = std::move(w);
    return out;
}

arma::cx_vec conjugate_precoder(const arma::cx_rowvec &h)
{
    const double n = arma::norm(h);
    if (!(n > 0.0))
        throw std::domain_error("conjugate_precoder: zero channel vector");
    return h.t() / n;
}

} // namespace dfdsim
