// Copyright 2026 The Realm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace realm::detail {

// Real roots of monic-ish low-degree polynomials, robust enough for ray
// casting against tori. Roots are found by splitting the line at the critical
// points of the polynomial (computed recursively) and bisecting each monotone
// interval; a few Newton steps polish the result.

inline void solve_quadratic(double a, double b, double c, std::vector<double>& out) {
  if (a == 0.0) {
    if (b != 0.0) out.push_back(-c / b);
    return;
  }
  double disc = b * b - 4 * a * c;
  if (disc < 0) return;
  double sq = std::sqrt(disc);
  // citardauq form avoids cancellation
  double q = -0.5 * (b + (b >= 0 ? sq : -sq));
  out.push_back(q / a);
  if (q != 0.0) out.push_back(c / q);
  std::sort(out.begin(), out.end());
}

template <int N>
double poly_eval(const std::array<double, N + 1>& c, double x) {
  double r = c[N];
  for (int i = N - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

/// Bisection with Newton polish on a bracketing interval [lo, hi].
template <int N>
double refine_root(const std::array<double, N + 1>& c, double lo, double hi) {
  double flo = poly_eval<N>(c, lo);
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = poly_eval<N>(c, mid);
    if ((fm <= 0) == (flo <= 0)) { lo = mid; flo = fm; } else { hi = mid; }
  }
  return 0.5 * (lo + hi);
}

/// Real roots of c[0] + c[1] x + ... + c[N] x^N within [lo, hi], ascending.
template <int N>
void poly_roots_in(const std::array<double, N + 1>& c, double lo, double hi,
                   std::vector<double>& out) {
  if constexpr (N == 1) {
    if (c[1] != 0.0) {
      double r = -c[0] / c[1];
      if (r >= lo && r <= hi) out.push_back(r);
    }
    return;
  } else if constexpr (N == 2) {
    std::vector<double> rs;
    solve_quadratic(c[2], c[1], c[0], rs);
    for (double r : rs)
      if (r >= lo && r <= hi) out.push_back(r);
    return;
  } else {
    // critical points of p = roots of p'
    std::array<double, N> dc{};
    for (int i = 1; i <= N; ++i) dc[i - 1] = c[i] * i;
    std::vector<double> crit;
    poly_roots_in<N - 1>(dc, lo, hi, crit);
    crit.push_back(hi);
    double a = lo;
    double fa = poly_eval<N>(c, a);
    for (double b : crit) {
      if (b < a) continue;
      double fb = poly_eval<N>(c, b);
      if (fa == 0.0) {
        if (out.empty() || std::abs(out.back() - a) > 0) out.push_back(a);
      } else if ((fa < 0) != (fb < 0)) {
        out.push_back(refine_root<N>(c, a, b));
      }
      a = b;
      fa = fb;
    }
    if (fa == 0.0 && (out.empty() || out.back() != a)) out.push_back(a);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [&](double x, double y) { return std::abs(x - y) < 1e-14 * (1 + std::abs(x)); }),
              out.end());
  }
}

inline void quartic_roots_in(const std::array<double, 5>& c, double lo, double hi,
                             std::vector<double>& out) {
  poly_roots_in<4>(c, lo, hi, out);
}

}  // namespace realm::detail
