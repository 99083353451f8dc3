#pragma once

#include <span>
#include <vector>

#include "fanolab/ext_real.hpp"

namespace fanolab {

/// Constants for bounds of the form min_i P_i(A_i) <= max{constant, K / ln N}
/// over partitions into N cells.
struct BirgeConstants {
  long long n_hypotheses;
  double c_n;
  double d_n;
  double massart;
};

inline constexpr double kBirgeTolerance = 1e-10;

/// h(c)/c + ln(1 - c); continuous and strictly decreasing on (0,1).
double birge_g(double c);

/// r_N(b) = kl(b, (1-b)/(N-1)) - b ln N.
double birge_r(long long n, double b);

/// Unique c in (0,1) with birge_g(c) = ln((N-1)/N).
double birge_c(long long n);

/// max{b in [0,1] : r_N(b) <= 0}.
double birge_d(long long n);

/// (2e - 1) / (2e).
double massart_constant();

enum class BirgeVariant { Cn, Dn, Massart };

double birge_bound(long long n, ExtReal k_bar, BirgeVariant variant);

BirgeConstants birge_constants(long long n);

std::vector<BirgeConstants> comparison_table(std::span<const long long> n_values);

}  // namespace fanolab
