#include "isoperim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>

#include "isoperim/extremals.hpp"

namespace isoperim {

namespace {

constexpr double kBand = 1e-15;  // float slack when comparing perimeters

// floor/ceil division for possibly negative numerators, positive divisor
long long fdiv(long long num, long long den) {
  return num >= 0 ? num / den : -((-num + den - 1) / den);
}
long long cdiv(long long num, long long den) {
  return num >= 0 ? (num + den - 1) / den : -((-num) / den);
}

// |E n R| in half-grid units for interval unions given by even endpoint lists
long long overlap_units(const long long* ae, int an, const long long* be,
                        int bn) {
  long long s = 0;
  for (int i = 0; i + 1 < an; i += 2)
    for (int j = 0; j + 1 < bn; j += 2) {
      const long long lo = std::max(ae[i], be[j]);
      const long long hi = std::min(ae[i + 1], be[j + 1]);
      if (hi > lo) s += hi - lo;
    }
  return s;
}

// ref-interval mass inside [lo,hi), half-grid units
long long seg_overlap(long long lo, long long hi, const long long* ref,
                      int rn) {
  long long s = 0;
  for (int i = 0; i + 1 < rn; i += 2) {
    const long long l = std::max(lo, ref[i]);
    const long long h = std::min(hi, ref[i + 1]);
    if (h > l) s += h - l;
  }
  return s;
}

// symmetric-difference measure against the measure-matched reference shape,
// in half-grid units (exact integers)
long long asym_units(const int* e, int cnt, int n, int mass) {
  long long set[8];
  for (int i = 0; i < cnt; ++i) set[i] = 2LL * e[i];
  const long long n2 = 2LL * n;
  const long long m2 = 2LL * mass;
  const long long comp_ref[4] = {0, mass, n2 - mass, n2};
  const long long intv_ref[2] = {static_cast<long long>(n) - mass,
                                 static_cast<long long>(n) + mass};
  const long long lam_comp = 2 * (m2 - overlap_units(set, cnt, comp_ref, 4));
  const long long lam_intv = 2 * (m2 - overlap_units(set, cnt, intv_ref, 2));
  if (m2 < n) return lam_comp;
  if (m2 > n) return lam_intv;
  return std::min(lam_comp, lam_intv);
}

struct Search {
  int n = 0;
  int kmax = 0;
  int mass_lo = 0, mass_hi = 0;
  bool has_lambda = false;
  double lam_lo_units = 0.0, lam_hi_units = 0.0;
  bool origin_free = false;
  std::vector<double> jval;

  // pass A incumbent
  double best = std::numeric_limits<double>::infinity();
  int best_ends[8];
  int best_cnt = 0;

  // pass B tallies
  bool pass_b = false;
  double threshold = 0.0;
  std::int64_t count = 0;
  bool tie = false;

  int ends[8];

  // With a lambda target the total mass is fixed per sub-run, which pins the
  // measure-matched reference shape(s).  The admissible asymmetry interval
  // then becomes an integer window [w_lo, w_hi] on the overlap with the
  // reference; prefix tables of reference mass make the reachable-overlap
  // bounds monotone in the scan position, so whole loop tails break off.
  bool window_mode = false;
  int fixed_mass = 0;
  int nrefs = 0;  // 2 only when mass/n == 1/2 exactly
  long long w_lo = 0, w_hi = 0;
  std::vector<long long> pref[2];  // reference mass before grid position
  // rend[k][x]: exclusive end of the run of grid cells starting at x over
  // which the per-cell reference mass is constant (overlap slopes live here)
  std::vector<int> rend[2];
  // suffix envelopes of the single-component overlap pref[k][a+m]-pref[k][a]
  // over starts >= a, built lazily per component mass m
  std::vector<std::vector<long long>> env_min[2], env_max[2];
  std::vector<char> env_built;

  // suffix min of jval[a] + jval[a+m] over starts >= a, per component mass
  std::vector<std::vector<double>> min_pair;
  std::vector<char> mp_built;

  void build_env(int m) {
    env_built[m] = 1;
    const int amax = n - m;
    for (int k = 0; k < nrefs; ++k) {
      auto& lo = env_min[k][m];
      auto& hi = env_max[k][m];
      lo.assign(amax + 2, std::numeric_limits<long long>::max());
      hi.assign(amax + 2, std::numeric_limits<long long>::min());
      for (int a = amax; a >= 0; --a) {
        const long long o = pref[k][a + m] - pref[k][a];
        lo[a] = std::min(o, lo[a + 1]);
        hi[a] = std::max(o, hi[a + 1]);
      }
    }
  }

  void build_mp(int m) {
    mp_built[m] = 1;
    const int amax = n - m;
    auto& mp = min_pair[m];
    mp.assign(amax + 2, std::numeric_limits<double>::infinity());
    for (int a = amax; a >= 0; --a)
      mp[a] = std::min(jval[a] + jval[a + m], mp[a + 1]);
  }

  // sufg[C][u]: cheapest way to close the set when the open component ends
  // at u and the final component then carries mass C - u, minimized over
  // ends >= u.  Nondecreasing in u, so a binary search caps the end scan.
  std::vector<double> sufg;
  int sstride = 0;

  void build_sufg() {
    const int rows = n + fixed_mass + 2;
    sstride = n + 2;
    for (int m = 1; m <= fixed_mass; ++m)
      if (!mp_built[m]) build_mp(m);
    sufg.assign(static_cast<std::size_t>(rows) * sstride,
                std::numeric_limits<double>::infinity());
    for (int C = 0; C < rows; ++C) {
      double* row = &sufg[static_cast<std::size_t>(C) * sstride];
      for (int u = n; u >= 0; --u) {
        const int m = C - u;
        double g = std::numeric_limits<double>::infinity();
        if (m >= 1 && m <= fixed_mass && u + m <= n)
          g = jval[u] + min_pair[m][u + 1];
        row[u] = std::min(g, row[u + 1]);
      }
    }
  }

  // Necessary condition for some start >= pos of the final component (mass
  // m, committed overlaps ov0/ov1) to land the total overlap in the window.
  bool last_can_hit(int pos, int m, long long ov0, long long ov1) {
    if (m < 1 || pos > n - m) return false;
    if (!env_built[m]) build_env(m);
    bool can_lo = false;
    for (int k = 0; k < nrefs; ++k) {
      const long long ov_k = k ? ov1 : ov0;
      if (env_min[k][m][pos] > w_hi - ov_k) return false;
      if (env_max[k][m][pos] >= w_lo - ov_k) can_lo = true;
    }
    return can_lo;
  }

  bool feasible_leaf(int cnt, int mass) const {
    if (origin_free) {
      for (int i = 0; i + 1 < cnt; i += 2)
        if (2 * ends[i] < n && n < 2 * ends[i + 1]) return false;
    }
    if (has_lambda) {
      const double u =
          static_cast<double>(asym_units(ends, cnt, n, mass));
      if (u < lam_lo_units || u > lam_hi_units) return false;
    }
    return true;
  }

  void leaf(int cnt, int mass, double perim) {
    if (pass_b) {
      if (perim > threshold || !feasible_leaf(cnt, mass)) return;
      ++count;
      if (!tie) {
        if (cnt != best_cnt) {
          tie = true;
        } else {
          for (int i = 0; i < cnt; ++i)
            if (std::abs(ends[i] - best_ends[i]) > 24) { tie = true; break; }
        }
      }
      return;
    }
    if (perim > best + kBand || !feasible_leaf(cnt, mass)) return;
    if (perim < best - kBand ||
        (best_cnt > 0 &&
         std::lexicographical_compare(ends, ends + cnt, best_ends,
                                      best_ends + best_cnt)) ||
        best_cnt == 0) {
      best = std::fmin(best, perim);
      best_cnt = cnt;
      std::memcpy(best_ends, ends, sizeof(int) * cnt);
    }
  }

  double cutoff() const { return (pass_b ? threshold : best) + kBand; }

  // Both tests are monotone in a for fixed committed overlap, so a true
  // result breaks the whole a-scan: (i) future mass placed at >= a can no
  // longer bring some reference overlap up to w_lo; (ii) the remaining mass
  // exceeds the zero-overlap capacity right of a so much that every
  // completion overshoots w_hi.
  bool hopeless_from(int a, int mass, long long ov0, long long ov1) const {
    const long long rem2 = 2LL * (fixed_mass - mass);
    bool reach = false;
    for (int k = 0; k < nrefs; ++k) {
      const long long right = pref[k][n] - pref[k][a];
      const long long ov_k = k ? ov1 : ov0;
      if (ov_k + std::min(rem2, right) >= w_lo) {
        reach = true;
        break;
      }
    }
    if (!reach) return true;
    for (int k = 0; k < nrefs; ++k) {
      const long long right = pref[k][n] - pref[k][a];
      const long long zcap2 = 2LL * (n - a) - right;
      const long long ov_k = k ? ov1 : ov0;
      if (ov_k + std::max(0LL, rem2 - zcap2) > w_hi) return true;
    }
    return false;
  }

  // Last component in window mode: its mass is forced, and the reference
  // overlap is piecewise linear in the start position (the slope changes
  // only where an endpoint crosses a reference boundary).  Solve each linear
  // piece for the feasible start range directly instead of scanning.
  void place_last(int pos, int idx, int mass, double perim, long long ov0,
                  long long ov1) {
    const int mlast = fixed_mass - mass;
    if (mlast < 1) return;
    const int ahi = n - mlast;
    auto emit = [&](long long lo_t, long long hi_t, int base) {
      for (long long t = lo_t; t <= hi_t; ++t) {
        const int x = base + static_cast<int>(t);
        const int bx = x + mlast;
        if (origin_free && 2 * x < n && 2 * bx > n) continue;
        const double pb = perim + jval[x] + jval[bx];
        if (pb <= cutoff()) {
          ends[idx] = x;
          ends[idx + 1] = bx;
          leaf(idx + 2, fixed_mass, pb);
        }
      }
    };
    int a = pos < 0 ? 0 : pos;
    while (a <= ahi) {
      // maximal piece [a, e) with constant overlap slopes
      int e = ahi + 1;
      long long oa[2] = {0, 0}, sl[2] = {0, 0};
      for (int k = 0; k < nrefs; ++k)
        oa[k] = (k ? ov1 : ov0) + pref[k][a + mlast] - pref[k][a];
      if (a < ahi) {
        for (int k = 0; k < nrefs; ++k) {
          sl[k] = (pref[k][a + mlast + 1] - pref[k][a + mlast]) -
                  (pref[k][a + 1] - pref[k][a]);
          e = std::min(e, std::min(rend[k][a], rend[k][a + mlast] - mlast));
        }
      } else {
        e = a + 1;
      }
      const long long len = e - a;
      // t-range of o + s t <= / >= bound within [0, len)
      auto le_rng = [&](long long o, long long s, long long bound,
                        long long& lo_t, long long& hi_t) {
        lo_t = 0;
        hi_t = len - 1;
        if (s == 0) {
          if (o > bound) hi_t = -1;
        } else if (s > 0) {
          hi_t = std::min(hi_t, fdiv(bound - o, s));
        } else {
          lo_t = std::max(lo_t, cdiv(o - bound, -s));
        }
      };
      auto ge_rng = [&](long long o, long long s, long long bound,
                        long long& lo_t, long long& hi_t) {
        lo_t = 0;
        hi_t = len - 1;
        if (s == 0) {
          if (o < bound) hi_t = -1;
        } else if (s > 0) {
          lo_t = std::max(lo_t, cdiv(bound - o, s));
        } else {
          hi_t = std::min(hi_t, fdiv(o - bound, -s));
        }
      };
      long long ulo[2], uhi[2], llo[2], lhi[2];
      for (int k = 0; k < nrefs; ++k) {
        le_rng(oa[k], sl[k], w_hi, ulo[k], uhi[k]);
        ge_rng(oa[k], sl[k], w_lo, llo[k], lhi[k]);
      }
      if (nrefs == 1) {
        emit(std::max(ulo[0], llo[0]), std::min(uhi[0], lhi[0]), a);
      } else {
        // need max(o0,o1) in window: both below w_hi, at least one above w_lo
        const long long alo = std::max(ulo[0], ulo[1]);
        const long long ahi2 = std::min(uhi[0], uhi[1]);
        long long l0 = std::max(alo, llo[0]), h0 = std::min(ahi2, lhi[0]);
        long long l1 = std::max(alo, llo[1]), h1 = std::min(ahi2, lhi[1]);
        if (l0 > h0) {
          emit(l1, h1, a);
        } else if (l1 > h1) {
          emit(l0, h0, a);
        } else {
          if (l1 < l0) {
            std::swap(l0, l1);
            std::swap(h0, h1);
          }
          if (l1 <= h0 + 1) {
            emit(l0, std::max(h0, h1), a);
          } else {
            emit(l0, h0, a);
            emit(l1, h1, a);
          }
        }
      }
      a = e;
    }
  }

  // place r more components, next left endpoint >= pos
  void place(int r, int pos, int idx, int mass, double perim, long long ov0,
             long long ov1) {
    if (window_mode && r == 1) {
      place_last(pos, idx, mass, perim, ov0, ov1);
      return;
    }
    const int a_max = n - 2 * r + 1;
    for (int a = pos; a <= a_max; ++a) {
      if (mass + (n - a) - (r - 1) < mass_lo) break;  // even full coverage short
      if (window_mode && hopeless_from(a, mass, ov0, ov1)) break;
      const double pa = perim + jval[a];
      if (pa > cutoff()) continue;
      ends[idx] = a;
      int blo = a + 1, bhi;
      if (r == 1) {
        blo = std::max(blo, a + (mass_lo - mass));
        bhi = std::min(n, a + (mass_hi - mass));
      } else {
        bhi = std::min(n - 2 * (r - 1), a + (mass_hi - mass) - (r - 1));
      }
      if (window_mode && r == 2 && blo <= bhi) {
        const double* row =
            &sufg[static_cast<std::size_t>(fixed_mass - mass + a) * sstride];
        const double lim = cutoff() - pa;
        if (row[blo] > lim) continue;  // no affordable completion at all
        int L = blo, H = bhi;
        while (L < H) {  // row is nondecreasing; keep ends that stay affordable
          const int mid = (L + H + 1) >> 1;
          if (row[mid] <= lim) L = mid; else H = mid - 1;
        }
        bhi = L;
      }
      long long nov0 = ov0, nov1 = ov1;
      for (int b = blo; b <= bhi; ++b) {
          if (origin_free && 2 * a < n && 2 * b > n) break;  // straddles origin
        if (window_mode) {
          nov0 = ov0 + pref[0][b] - pref[0][a];
          if (nov0 > w_hi) break;  // committed overlap only grows with b
          if (nrefs == 2) {
            nov1 = ov1 + pref[1][b] - pref[1][a];
            if (nov1 > w_hi) break;
          }
          const long long rem2 = 2LL * (fixed_mass - (mass + b - a));
          bool reach = false;
          for (int k = 0; k < nrefs; ++k) {
            const long long right = pref[k][n] - pref[k][b + 1];
            const long long ov_k = k ? nov1 : nov0;
            if (ov_k + std::min(rem2, right) >= w_lo) {
              reach = true;
              break;
            }
          }
          if (!reach) break;  // committed + reachable overlap sinks with b
        }
        const double pb = pa + jval[b];
        if (pb > cutoff()) continue;
        ends[idx + 1] = b;
        if (r == 1) {
          leaf(idx + 2, mass + b - a, pb);
        } else {
          if (window_mode && r == 2) {
            const int mlast = fixed_mass - (mass + b - a);
            if (mlast < 1 || b + 1 > n - mlast) continue;
            if (!mp_built[mlast]) build_mp(mlast);
            if (pb + min_pair[mlast][b + 1] > cutoff()) continue;
            if (!last_can_hit(b + 1, mlast, nov0, nov1)) continue;
          }
          place(r - 1, b + 1, idx + 2, mass + b - a, pb, nov0, nov1);
        }
      }
    }
  }

  void run() {
    if (!has_lambda) {
      for (int c = 1; c <= kmax; ++c) place(c, 0, 0, 0, 0.0, 0, 0);
      return;
    }
    window_mode = true;
    const int w_mass_lo = mass_lo, w_mass_hi = mass_hi;
    for (int mm = w_mass_lo; mm <= w_mass_hi; ++mm) {
      mass_lo = mass_hi = mm;
      fixed_mass = mm;
      const long long n2 = 2LL * n;
      long long refs[2][4];
      int refn[2];
      nrefs = 0;
      if (2 * mm <= n) {
        refs[nrefs][0] = 0;
        refs[nrefs][1] = mm;
        refs[nrefs][2] = n2 - mm;
        refs[nrefs][3] = n2;
        refn[nrefs] = 4;
        ++nrefs;
      }
      if (2 * mm >= n) {
        refs[nrefs][0] = static_cast<long long>(n) - mm;
        refs[nrefs][1] = static_cast<long long>(n) + mm;
        refn[nrefs] = 2;
        ++nrefs;
      }
      for (int k = 0; k < nrefs; ++k) {
        pref[k].assign(n + 1, 0);
        for (int i = 1; i <= n; ++i)
          pref[k][i] = seg_overlap(0, 2LL * i, refs[k], refn[k]);
        rend[k].assign(n, n);
        for (int x = n - 1; x >= 0; --x) {
          const long long dx = pref[k][x + 1] - pref[k][x];
          rend[k][x] = (x + 1 < n && pref[k][x + 2] - pref[k][x + 1] == dx)
                           ? rend[k][x + 1]
                           : x + 1;
        }
        env_min[k].assign(mm + 1, {});
        env_max[k].assign(mm + 1, {});
      }
      env_built.assign(mm + 1, 0);
      min_pair.assign(mm + 1, {});
      mp_built.assign(mm + 1, 0);
      if (kmax >= 2) build_sufg();
      w_lo = static_cast<long long>(
          std::ceil((4.0 * mm - lam_hi_units) / 2.0 - 1e-9));
      w_hi = static_cast<long long>(
          std::floor((4.0 * mm - lam_lo_units) / 2.0 + 1e-9));
      if (w_lo < 0) w_lo = 0;
      if (w_hi > 2LL * mm) w_hi = 2LL * mm;
      if (w_lo > w_hi) continue;  // this mass cannot meet the target
      for (int c = 1; c <= kmax; ++c) place(c, 0, 0, 0, 0.0, 0, 0);
    }
    mass_lo = w_mass_lo;
    mass_hi = w_mass_hi;
  }
};

void resolve_config(const OracleConfig& cfg, double& mtol, double& ltol) {
  if (cfg.grid_n < 4 || cfg.grid_n > 20000)
    throw std::invalid_argument("oracle: grid_n outside [4,20000]");
  if (cfg.max_components < 1 || cfg.max_components > 4)
    throw std::invalid_argument("oracle: max_components outside [1,4]");
  const double floor_tol = 2.0 / cfg.grid_n;
  mtol = cfg.measure_tol < 0.0 ? floor_tol : cfg.measure_tol;
  ltol = cfg.asymmetry_tol < 0.0 ? floor_tol : cfg.asymmetry_tol;
  if (mtol < floor_tol - 1e-12 || ltol < floor_tol - 1e-12)
    throw std::invalid_argument("oracle: tolerances below 2/grid_n");
}

}  // namespace

OracleResult brute_min_perimeter(const Measure& m, double p,
                                 std::optional<double> lambda_target,
                                 const OracleConfig& cfg, bool origin_free) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("oracle: p outside (0,1)");
  double mtol, ltol;
  resolve_config(cfg, mtol, ltol);
  const int n = cfg.grid_n;
  if (lambda_target) {
    const double lmax = 2.0 * std::fmin(p, 1.0 - p);
    if (!(*lambda_target >= 0.0 && *lambda_target <= lmax + 1e-12))
      throw std::invalid_argument("oracle: lambda_target outside [0,2min(p,1-p)]");
  }

  Search s;
  s.n = n;
  s.kmax = cfg.max_components;
  s.mass_lo = std::max(1, static_cast<int>(std::ceil((p - mtol) * n - 1e-9)));
  s.mass_hi = std::min(n, static_cast<int>(std::floor((p + mtol) * n + 1e-9)));
  if (s.mass_lo > s.mass_hi)
    throw std::runtime_error("oracle: measure window empty on the grid");
  s.origin_free = origin_free;
  if (lambda_target) {
    s.has_lambda = true;
    s.lam_lo_units = (*lambda_target - ltol) * 2.0 * n - 1e-9;
    s.lam_hi_units = (*lambda_target + ltol) * 2.0 * n + 1e-9;
  }
  s.jval.resize(n + 1);
  for (int e = 0; e <= n; ++e) s.jval[e] = m.j(static_cast<double>(e) / n);

  s.run();
  if (s.best_cnt == 0)
    throw std::runtime_error("oracle: constraints infeasible on the grid");

  // second pass with a fixed threshold: tie detection and a deterministic
  // near-optimal count independent of the pass-A pruning order
  const double tie_tol = 1.5 * m.j_lipschitz() / n;
  s.pass_b = true;
  s.threshold = s.best + tie_tol;
  s.run();

  std::vector<double> wit;
  double perim = 0.0;
  int mass = 0;
  for (int i = 0; i < s.best_cnt; ++i) {
    wit.push_back(static_cast<double>(s.best_ends[i]) / n);
    perim += s.jval[s.best_ends[i]];
    mass += (i % 2 ? s.best_ends[i] : -s.best_ends[i]);
  }

  OracleResult out;
  out.witness = QuantileSet{wit};
  out.min_perimeter = perim;
  out.measure_residual = std::fabs(static_cast<double>(mass) / n - p);
  out.asymmetry_residual =
      lambda_target
          ? std::fabs(static_cast<double>(asym_units(s.best_ends, s.best_cnt,
                                                     n, mass)) /
                          (2.0 * n) -
                      *lambda_target)
          : 0.0;
  out.enumerated_count = s.count;
  out.tie = s.tie;
  return out;
}

ShiftReport verify_shifting(const Measure& m, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_shifting: trials < 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ShiftReport rep;
  rep.trials = trials;

  auto psi_at = [&m](double t, double q) {
    return m.j(t) + m.j(std::fmin(1.0, t + q));
  };
  auto record = [&rep](double orig, double shifted) {
    const double excess = shifted - orig;
    rep.max_excess = std::fmax(rep.max_excess, excess);
    if (excess > 1e-12)
      ++rep.violations;
    else if (std::fabs(excess) <= 1e-12)
      ++rep.equalities;
  };

  for (int k = 0; k < trials; ++k) {
    const int what = k % 3;
    const bool mirror = unit(rng) < 0.5;
    double q, ta, tb;
    if (what == 0) {
      // measure < 1/2, interval off the origin, shift away from it
      q = 0.02 + 0.43 * unit(rng);
      ta = 0.5 + (0.5 - q - 0.01) * unit(rng);
      tb = ta + (0.05 + 0.95 * unit(rng)) * (1.0 - q - ta);
    } else if (what == 1) {
      // measure < 1/2, straddling the origin, shift toward symmetry
      q = 0.05 + 0.40 * unit(rng);
      const double sym = (1.0 - q) / 2.0;
      ta = sym + (0.05 + 0.95 * unit(rng)) * (q / 2.0) * 0.999;
      tb = sym + 0.9 * unit(rng) * (ta - sym);
    } else {
      // measure >= 1/2, shift toward symmetry
      q = 0.5 + 0.4 * unit(rng);
      const double sym = (1.0 - q) / 2.0;
      ta = sym + (0.05 + 0.95 * unit(rng)) * sym;
      tb = sym + 0.9 * unit(rng) * (ta - sym);
    }
    if (mirror) {
      // reflected variant of the same case
      const double na = 1.0 - q - ta, nb = 1.0 - q - tb;
      ta = na;
      tb = nb;
    }
    record(psi_at(ta, q), psi_at(tb, q));
  }
  return rep;
}

ClassificationReport verify_classification(const Measure& m,
                                           const OracleConfig& cfg,
                                           int cells_per_axis,
                                           bool origin_free) {
  if (cells_per_axis < 1)
    throw std::invalid_argument("verify_classification: cells_per_axis < 1");
  ClassificationReport rep;
  const double bound =
      m.j_lipschitz() * 2.0 * cfg.max_components / cfg.grid_n;
  for (int i = 0; i < cells_per_axis; ++i) {
    const double p = (i + 0.5) / (2.0 * cells_per_axis);
    for (int j = 0; j < cells_per_axis; ++j) {
      const double lambda = (j + 0.5) / cells_per_axis * 2.0 * p;
      ClassificationCell cell;
      cell.p = p;
      cell.lambda = lambda;
      cell.bound = bound;
      cell.closed_form_min =
          min_candidate(m, p, lambda, origin_free).perimeter;
      cell.oracle_min =
          brute_min_perimeter(m, p, lambda, cfg, origin_free).min_perimeter;
      cell.gap = std::fabs(cell.oracle_min - cell.closed_form_min);
      cell.ok = cell.gap <= bound;
      if (!cell.ok) ++rep.failures;
      rep.max_gap = std::fmax(rep.max_gap, cell.gap);
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

}  // namespace isoperim
