#pragma once

#include "seshadri/linalg.hpp"
#include "seshadri/monomials.hpp"
#include "seshadri/prime_field.hpp"
#include "seshadri/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace seshadri {

enum class Provenance { Explicit, Random };

const char* to_string(Provenance p);

using FieldPoint = std::vector<std::uint32_t>;
using RationalPoint = std::vector<Rational>;

/// r points of projective n-space, either exact rational points supplied by
/// the caller or pseudo-random points over a prime field.
class PointConfiguration {
 public:
  /// Validates that every point is nonzero and the points are pairwise
  /// distinct as projective points.
  static PointConfiguration from_rational(int n, std::vector<RationalPoint> points, bool special = false);
  static PointConfiguration from_field(int n, std::vector<FieldPoint> points, const PrimeField& field,
                                       std::uint64_t seed);
  /// r uniformly random distinct points of P^n(F_p), reproducible from (seed, p).
  static PointConfiguration random(int n, std::size_t r, const PrimeField& field, std::uint64_t seed);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept {
    return provenance_ == Provenance::Explicit ? rational_.size() : field_points_.size();
  }
  Provenance provenance() const noexcept { return provenance_; }
  bool special() const noexcept { return special_; }
  std::uint64_t seed() const noexcept { return seed_; }
  /// Prime of a Random configuration (0 for Explicit ones).
  std::uint32_t prime() const noexcept { return prime_; }
  const std::vector<RationalPoint>& rational_points() const noexcept { return rational_; }
  const std::vector<FieldPoint>& field_points() const noexcept { return field_points_; }

  /// Coordinates modulo p. Throws InvalidArgument when a denominator
  /// vanishes, a point reduces to zero, two points collide, or a Random
  /// configuration is asked for a different prime.
  std::vector<FieldPoint> reduce(const PrimeField& field) const;

 private:
  int n_ = 0;
  Provenance provenance_ = Provenance::Explicit;
  bool special_ = false;
  std::uint64_t seed_ = 0;
  std::uint32_t prime_ = 0;
  std::vector<RationalPoint> rational_;
  std::vector<FieldPoint> field_points_;
};

struct FatPointScheme {
  PointConfiguration config;
  std::vector<int> mults;

  /// Throws InvalidArgument on length mismatch or negative multiplicities.
  void validate() const;
  int total_multiplicity() const;
};

/// Conditions "vanish to order m_i at p_i" on degree-d forms.
struct ConditionMatrix {
  int degree = 0;
  ModMatrix matrix;
  /// Index of the point each row belongs to.
  std::vector<std::size_t> row_point;
};

/// Rows for point p_i are the coefficients of y0^(d-j) y'^beta, |beta| = j < m_i,
/// in F(T_i y), where T_i e_0 = p_i and T_i e_k runs over the standard basis
/// vectors skipping the first nonzero coordinate of p_i. Columns are the
/// degree-d monomials in grevlex order.
ConditionMatrix build_condition_matrix(const FatPointScheme& scheme, int degree, const PrimeField& field);

/// Same rows for already reduced points.
ConditionMatrix build_condition_matrix(std::span<const FieldPoint> points, std::span<const int> mults, int n,
                                       int degree, const PrimeField& field);

/// Vanishing order at `point` of the nonzero degree-d form with the given
/// grevlex coefficients. Throws InvalidArgument for the zero form.
int actual_multiplicity(std::span<const std::uint32_t> form, int n, int degree, const FieldPoint& point,
                        const PrimeField& field);

/// min{d >= 1 : C(d+n, n) > sum_i C(m_i - 1 + n, n)}.
int expected_alpha(int n, std::span<const int> mults);

/// sum_i C(m_i - 1 + n, n).
Integer condition_count(int n, std::span<const int> mults);

struct TrialRecord {
  std::uint32_t prime = 0;
  std::uint64_t seed = 0;
  int alpha = 0;
};

struct AlphaResult {
  int n = 0;
  std::vector<int> mults;
  int alpha = 0;
  /// Degree-alpha form in the kernel, grevlex coefficients mod witness_prime.
  std::vector<std::uint32_t> witness;
  std::uint32_t witness_prime = 0;
  std::vector<int> actual_mults;
  std::vector<std::uint32_t> primes_used;
  std::uint64_t seed = 0;
  int trials = 1;
  std::vector<TrialRecord> trial_log;
  /// Configuration the witness belongs to.
  PointConfiguration config;

  /// Number of trials whose alpha equals the reported maximum.
  int agreeing_trials() const;
};

struct AlphaOptions {
  std::vector<std::uint32_t> primes = default_primes(2);
  /// Linear upward scan from d = 1 instead of binary search.
  bool scan = false;
};

/// Smallest d >= 1 with a nonzero degree-d form vanishing to the prescribed
/// orders. Explicit configurations are reduced modulo each prime and the
/// largest value is kept (a kernel-free degree modulo p is kernel-free over Q).
/// Throws DegenerateScheme when every multiplicity is zero.
AlphaResult alpha(const FatPointScheme& scheme, const AlphaOptions& options = {});

/// Maximum alpha over `trials` seeded random configurations for each prime.
/// Trial t uses seed + t; configurations over different primes are drawn
/// independently from the same seed.
AlphaResult alpha_generic(int n, const std::vector<int>& mults, int trials,
                          const std::vector<std::uint32_t>& primes, std::uint64_t seed, bool scan = false);

struct KernelDimension {
  std::size_t columns = 0;
  std::size_t conditions = 0;
  std::size_t rank = 0;
  std::size_t kernel = 0;
  std::size_t expected_kernel = 0;
};

KernelDimension kernel_dimension(std::span<const FieldPoint> points, std::span<const int> mults, int n, int degree,
                                 const PrimeField& field);

enum class DoublePointStatus { Regular, Exceptional };

const char* to_string(DoublePointStatus s);

/// Classification of r general double points in degree d on P^n:
/// Exceptional exactly for (n, 2, r) with 2 <= r <= n and for
/// (2,4,5), (3,4,9), (4,4,14), (4,3,7).
DoublePointStatus ah_double_point_status(int n, int d, int r);

nlohmann::json to_json(const AlphaResult& result);
nlohmann::json witness_json(const AlphaResult& result);

/// Uniform multiplicity vector of length r.
std::vector<int> uniform_mults(std::size_t r, int m);

}  // namespace seshadri
