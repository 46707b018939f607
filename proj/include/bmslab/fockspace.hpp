#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "bmslab/partitions.hpp"
#include "bmslab/poly.hpp"
#include "bmslab/rat.hpp"
#include "bmslab/series.hpp"

namespace bmslab::fockspace {

using exactmath::HSeries;
using exactmath::Rat;
using exactmath::UPoly;

// Irreducible symmetric-group character chi^lambda_mu, evaluated by
// border-strip removal on beta-numbers. Values are memoized in a
// process-wide table; concurrent callers serialize on that table.
mpz_class character(const Partition& lambda, const Partition& mu);

// Dimension of the irreducible representation: |lambda|! over the product
// of hook lengths.
mpz_class hook_dimension(const Partition& lambda);

// prod over diagram cells of (1 + h*content)^m, truncated at h^order.
HSeries content_product(const Partition& lambda, int m, int order);

// Vacuum expectation of e^{alpha_1} D(h)^m prod_i alpha_{-mu_i}/mu_i,
// evaluated by the character sum over lambda with |lambda| = |mu| and
// truncated at h^order. The per-part weight 1/prod(mu_i) is included.
// Partitions larger than the character budget are rejected.
HSeries disconnected_vev(int m, const Partition& mu, int order, int jobs = 1);

// Connected version: Moebius inversion over set partitions of the part
// positions, where each block carries a factor h^{-(block size sum)} before
// the cumulant sum. The result is reported with truncation exactly h^order.
HSeries connected_correlator(int m, const Partition& mu, int order);

// Connected count read off as the h^(2g-2+len(mu)) coefficient of the
// connected correlator; negative genus gives 0.
Rat bms_fock(int m, int g, const Partition& mu);

// Disconnected count at cycle-count budget L, read off as the
// h^(m|mu|-L) coefficient of the disconnected expectation.
Rat bms_disconnected_fock(int m, const Partition& mu, long L);

// ---------------------------------------------------------------------------
// Half-integer indexed model. Half-integers are carried as twice their
// value, so valid indices are odd longs.

using Half = long;

// Whether the basis vector of the partition fills the given slot; slots are
// lambda_i - i + 1/2, continued by -i + 1/2 below the diagram.
bool slot_filled(const Partition& lambda, Half twice_slot);

// Finite combination of charge-zero basis vectors with series coefficients.
class FockVector {
 public:
  FockVector() = default;
  static FockVector basis(const Partition& lambda, int trunc);

  void add(const Partition& lambda, const HSeries& c);
  const std::map<Partition, HSeries>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  friend FockVector operator+(const FockVector& a, const FockVector& b);
  friend FockVector operator-(const FockVector& a, const FockVector& b);
  friend FockVector operator*(const Rat& s, FockVector v);

 private:
  std::map<Partition, HSeries> t_;
};

// Action of the basis matrix element E_{row,col} on the charge-zero sector,
// with the normal-ordered diagonal convention: every diagonal element kills
// the vacuum.
FockVector e_wedge_apply(Half twice_row, Half twice_col, const FockVector& v);

// alpha_n = sum_k E_{k-n,k} for nonzero integer n.
FockVector alpha_apply(long n, const FockVector& v);

// sum_l f(l) E_{l+a,l} with polynomial weight f. For a = 0 the diagonal
// acts by the regularized eigenvalue
//   sum_i [f(lambda_i - i + 1/2) - f(-i + 1/2)].
FockVector weighted_shift_apply(const UPoly& f, long a, const FockVector& v);

// ---------------------------------------------------------------------------
// Finite window [-W, W] slice of the conjugated one-part operator
//   h^{-k} e^{alpha_1} D(h)^m (alpha_{-k}/k) D(h)^{-m} e^{-alpha_1}.
// Entries give the series coefficients of the off-identity part in the
// E_{row,col} basis; the scalar part is kept separately and is computed by
// the expectation route. An entry (row, col) is exact when every index the
// product threads through stays inside the window, which happens exactly
// when row - k >= -W + 1/2 and col + k <= W - 1/2.
class WindowedOperator {
 public:
  WindowedOperator(int m, long k, long W, int order,
                   std::map<std::pair<Half, Half>, HSeries> entries, HSeries id_part)
      : m_(m), k_(k), W_(W), order_(order), entries_(std::move(entries)),
        id_part_(std::move(id_part)) {}

  int m() const { return m_; }
  long k() const { return k_; }
  long window() const { return W_; }
  int order() const { return order_; }
  Half lmin2() const { return -2 * W_ + 1; }
  Half lmax2() const { return 2 * W_ - 1; }

  const std::map<std::pair<Half, Half>, HSeries>& entries() const { return entries_; }
  const HSeries& id_part() const { return id_part_; }

  bool entry_exact(Half row2, Half col2) const {
    return row2 - 2 * k_ >= lmin2() && col2 + 2 * k_ <= lmax2();
  }
  // Entry with exactness enforced; absent entries are the zero series.
  HSeries exact_entry(Half row2, Half col2) const;

 private:
  int m_;
  long k_;
  long W_;
  int order_;
  std::map<std::pair<Half, Half>, HSeries> entries_;
  HSeries id_part_;
};

// Builds the window slice by explicit matrix products of the exponential
// shift matrices and the diagonal-conjugated shift. Requires k >= 1 and
// W >= k + order so that the exact sub-window is nonempty.
WindowedOperator windowed_conjugation_oracle(int m, long k, long W, int order);

}  // namespace bmslab::fockspace
