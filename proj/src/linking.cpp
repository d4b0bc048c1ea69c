#include "geolink/linking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace geolink {

Rat iota_prime(const SymT& T, const CycleSet& cs) {
  if (!T.positive_definite()) return Rat(0);
  BQF t{T.t1.get_num(), Rat(2 * T.t0).get_num(), T.t2.get_num()};
  if (!T.half_integral())
    throw std::domain_error("iota_prime: T must be half-integral");
  Int d = t.disc();
  Rat total(0);
  for (const FormClass& C : classes(d)) {
    Int m = m_coeff(T, C.rep);
    if (m == 0) continue;
    Rat inner(0);
    for (const OrbitPoint& p : class_orbit_points(C)) {
      for (const GeodesicCycle& cyc : cs.cycles) {
        inner += winding({p.pos}, cyc) - winding({p.neg}, cyc);
      }
    }
    total += Rat(m) * inner;
  }
  return total;
}

std::vector<std::pair<Int, Int>> theta_shifts(const SymT& T) {
  std::vector<std::pair<Int, Int>> out;
  if (sgn(T.t1) <= 0 || sgn(T.t2) <= 0) {
    if (T.positive_definite()) out.emplace_back(0, 0);
    return out;
  }
  Int nb = isqrt(T.t1.get_num() / T.t1.get_den()) + 1;
  Int mb = isqrt(T.t2.get_num() / T.t2.get_den()) + 1;
  for (Int n = -nb; n <= nb; ++n) {
    for (Int m = -mb; m <= mb; ++m) {
      SymT shifted{T.t1 - Rat(n * n), T.t0 - Rat(n * m), T.t2 - Rat(m * m)};
      if (shifted.positive_definite()) out.emplace_back(n, m);
    }
  }
  return out;
}

Rat iota_full(const SymT& T, const CycleSet& cs) {
  Rat total(0);
  for (const auto& [n, m] : theta_shifts(T)) {
    SymT shifted{T.t1 - Rat(n * n), T.t0 - Rat(n * m), T.t2 - Rat(m * m)};
    total += iota_prime(shifted, cs);
  }
  return total;
}

namespace {

int thread_count() {
  if (const char* env = std::getenv("GEOLINK_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SymT> enumerate_reduced(const Rat& max_det, bool nonsquare_only) {
  std::vector<SymT> out;
  // 2 t0 <= t1 <= t2, t0 >= 0 half-integral; det = t1 t2 - t0^2 in (0, max_det)
  // implies t1 t2 < (4/3) max_det
  Rat cap = Rat(4, 3) * max_det;
  for (Int t1 = 1; Rat(t1 * t1) < cap; ++t1) {
    for (Int t2 = t1; Rat(t1 * t2) < cap; ++t2) {
      for (Int k = 0; k <= t1; ++k) {  // t0 = k/2
        Rat t0 = make_rat(k, 2);
        Rat det = Rat(t1 * t2) - t0 * t0;
        if (sgn(det) <= 0 || det >= max_det) continue;
        if (nonsquare_only && is_square(det)) continue;
        out.push_back({Rat(t1), t0, Rat(t2)});
      }
    }
  }
  return out;
}

}  // namespace

CoeffTable series_table(const Rat& max_det, const CycleSet& cs,
                        bool nonsquare_only) {
  if (sgn(max_det) <= 0)
    throw std::domain_error("series_table: max_det must be positive");
  std::vector<SymT> ts = enumerate_reduced(max_det, nonsquare_only);
  std::vector<Rat> values(ts.size());

  int workers = thread_count();
  if (workers > static_cast<int>(ts.size())) workers = static_cast<int>(ts.size());
  if (workers <= 1 || ts.size() < 4) {
    for (size_t i = 0; i < ts.size(); ++i) values[i] = iota_full(ts[i], cs);
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= ts.size()) return;
        values[i] = iota_full(ts[i], cs);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  CoeffTable table;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (sgn(values[i]) == 0) continue;
    Rat det = ts[i].det();
    table.rows.push_back({ts[i], det, values[i], is_square(det)});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const CoeffRow& a, const CoeffRow& b) {
              if (a.det != b.det) return a.det < b.det;
              if (a.T.t1 != b.T.t1) return a.T.t1 < b.T.t1;
              return a.T.t0 < b.T.t0;
            });
  return table;
}

GrowthReport growth_check(const Rat& max_det, const CycleSet& cs) {
  CoeffTable table = series_table(max_det, cs, /*nonsquare_only=*/true);
  GrowthReport rep{0.0, SymT{Rat(1), Rat(0), Rat(1)}};
  for (const CoeffRow& row : table.rows) {
    double ratio = std::fabs(row.value.get_d()) /
                   std::pow(row.det.get_d(), 1.5);
    if (ratio > rep.max_ratio) {
      rep.max_ratio = ratio;
      rep.argmax = row.T;
    }
  }
  return rep;
}

}  // namespace geolink
