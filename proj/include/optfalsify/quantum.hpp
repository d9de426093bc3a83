// Copyright 2026 The optfalsify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "optfalsify/linalg.hpp"
#include "optfalsify/matrix.hpp"

namespace optf {

/// Slack on traces, spectra and Kraus sums when validating OPT objects.
inline constexpr double kValidationTol = 1e-10;

/// Positive operator with 0 < Tr rho <= 1 (sub-normalized states allowed).
class QuantumState {
  public:
    /// Validates hermiticity, positivity (eigenvalues down to -rank_tol*lambda_max
    /// are tolerated as rounding noise) and the trace bound. Throws InvalidState.
    explicit QuantumState(ComplexMatrix matrix, double rank_tol = kDefaultRankTol);

    static QuantumState pure(const ComplexMatrix &ket);

    std::size_t dim() const noexcept {
        return matrix_.rows();
    }
    const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }
    double trace() const noexcept {
        return trace_;
    }
    /// Tr rho = 1 within tolerance.
    bool deterministic() const noexcept {
        return deterministic_;
    }

  private:
    ComplexMatrix matrix_;
    double trace_;
    bool deterministic_;
};

/// Operator 0 <= E <= I evaluated through the Born rule.
class Effect {
  public:
    explicit Effect(ComplexMatrix matrix);

    std::size_t dim() const noexcept {
        return matrix_.rows();
    }
    const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }

  private:
    ComplexMatrix matrix_;
};

/// Trace-nonincreasing CP map in Kraus form, each operator dim_out x dim_in.
class KrausChannel {
  public:
    explicit KrausChannel(std::vector<ComplexMatrix> kraus);

    static KrausChannel identity(std::size_t dim);
    static KrausChannel unitary(const ComplexMatrix &u);

    std::size_t dim_in() const noexcept {
        return kraus_.front().cols();
    }
    std::size_t dim_out() const noexcept {
        return kraus_.front().rows();
    }
    const std::vector<ComplexMatrix> &kraus() const noexcept {
        return kraus_;
    }
    /// Exactly one Kraus term.
    bool atomic() const noexcept {
        return kraus_.size() == 1;
    }
    /// sum_k A_k^dagger A_k = I within tolerance.
    bool deterministic() const noexcept {
        return deterministic_;
    }

  private:
    std::vector<ComplexMatrix> kraus_;
    bool deterministic_;
};

/// Sequential composition: `second` after `first`.
KrausChannel compose(const KrausChannel &second, const KrausChannel &first);
/// Parallel composition on the tensor-product system.
KrausChannel parallel(const KrausChannel &a, const KrausChannel &b);

/// Unit vector on H_A (x) H_B whose A-marginal is a given state.
class Purification {
  public:
    /// Throws NotNormalized unless ||vector|| = 1 within tolerance.
    Purification(ComplexMatrix state_vector, std::size_t dim_a, std::size_t dim_b);

    const ComplexMatrix &state_vector() const noexcept {
        return vector_;
    }
    std::size_t dim_a() const noexcept {
        return dim_a_;
    }
    std::size_t dim_b() const noexcept {
        return dim_b_;
    }
    /// Tr_B |Psi><Psi|.
    ComplexMatrix marginal() const;

  private:
    ComplexMatrix vector_;
    std::size_t dim_a_;
    std::size_t dim_b_;
};

/// Unitary interaction realizing a channel: U acts on system (x) environment,
/// the environment starts in `ancilla`, and `projectors` read out the branch.
struct Dilation {
    ComplexMatrix unitary;
    QuantumState ancilla;
    std::vector<ComplexMatrix> projectors;
    std::size_t system_dim;
    std::size_t environment_dim;
};

/// Tr(rho E), clamped to [0, 1]. Throws NumericalContamination when the
/// imaginary part of the trace exceeds 1e-8.
double born_probability(const QuantumState &rho, const Effect &e);

QuantumState apply_channel(const KrausChannel &ch, const QuantumState &rho);

/// Minimal purification: |Psi> = sum_i sqrt(lambda_i) |v_i> (x) |i> over the
/// support eigenpairs in descending order, so dim_b = rank(rho).
Purification purify(const QuantumState &rho, double rank_tol = kDefaultRankTol);

/// Unitary U on H_B with (I (x) U)|Psi1> = |Psi2>. Both purifications must
/// share dim_a, dim_b and their A-marginal (within 1e-8). U is fixed on the
/// relevant support and extended by identity on a canonical completion.
ComplexMatrix connecting_unitary(const Purification &psi1, const Purification &psi2);

struct Discrimination {
    bool discriminable;
    /// ||P_rho P_nu||_max for the two support projectors.
    double support_overlap;
    /// Kernel projectors of rho and nu: each falsifies its own state while
    /// lying inside the support of the other one. Present iff discriminable.
    std::optional<std::pair<ComplexMatrix, ComplexMatrix>> falsifiers;
};

inline constexpr double kOrthogonalSupportTol = 1e-8;

/// Perfect discriminability via support orthogonality.
Discrimination perfectly_discriminable(const QuantumState &rho, const QuantumState &nu,
                                       double rank_tol = kDefaultRankTol);

struct Compression {
    ComplexMatrix isometry;  // rank x dim, rows are support eigenvectors (conjugated)
    QuantumState compressed;
};

/// Maps a rank-deficient state onto its support. Throws NotCompressible for full rank.
Compression compress(const QuantumState &rho, double rank_tol = kDefaultRankTol);

struct CanonicalTerm {
    ComplexMatrix operator_;  // A_j, dim_a x dim_a
    double weight;            // p_j = Tr(A_j^dagger A_j)
};

/// R = sum_j |A_j>><<A_j| with orthogonal A_j, from the spectrum of R.
std::vector<CanonicalTerm> canonical_form(const QuantumState &bipartite, std::size_t dim_a,
                                          double rank_tol = kDefaultRankTol);

struct LocalFalsifier {
    ComplexMatrix b;  // unit vector on the second factor
    Effect falsifier; // |a><a| (x) |b><b|
    /// A^dagger a vanished, so every b works; b is then the first canonical vector.
    bool degenerate;
};

/// Product effect with zero probability on |A>><<A|: b is orthogonal to (A^dagger a)^*.
LocalFalsifier local_falsifier(const ComplexMatrix &a_op, const ComplexMatrix &a);

/// Unitary realization of a trace-preserving square channel.
Dilation dilate(const KrausChannel &ch);

/// Tr_E[U (rho (x) sigma) U^dagger (I (x) P_k)].
ComplexMatrix dilation_branch(const Dilation &d, const QuantumState &rho, std::size_t k);

}  // namespace optf
