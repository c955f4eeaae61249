#include "condest/matgen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "condest/errors.hpp"

namespace condest {

std::size_t SpectrumSpec::size() const {
  std::size_t total = 0;
  for (const auto& s : segments) {
    total += s.count;
  }
  return total;
}

std::vector<double> SpectrumSpec::values() const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& s : segments) {
    if (s.lo < 0.0 || s.hi < 0.0 || s.lo > s.hi || !std::isfinite(s.hi)) {
      throw ContractError("SpectrumSpec: require 0 <= lo <= hi < inf");
    }
    if (s.count == 0) {
      continue;
    }
    switch (s.kind) {
      case SpectrumSegment::Kind::Constant:
        out.insert(out.end(), s.count, s.lo);
        break;
      case SpectrumSegment::Kind::Linear:
        for (std::size_t k = 0; k < s.count; ++k) {
          if (s.count == 1) {
            out.push_back(s.lo);
          } else {
            const double f = static_cast<double>(k) / static_cast<double>(s.count - 1);
            out.push_back(k + 1 == s.count ? s.hi : s.lo + f * (s.hi - s.lo));
          }
        }
        break;
      case SpectrumSegment::Kind::Logarithmic:
        if (s.lo <= 0.0) {
          throw ContractError("SpectrumSpec: logarithmic segment needs lo > 0");
        }
        for (std::size_t k = 0; k < s.count; ++k) {
          if (s.count == 1) {
            out.push_back(s.lo);
          } else {
            const double f = static_cast<double>(k) / static_cast<double>(s.count - 1);
            if (k == 0 || k + 1 == s.count) {
              out.push_back(k == 0 ? s.lo : s.hi);
            } else {
              out.push_back(std::exp(std::log(s.lo) + f * (std::log(s.hi) - std::log(s.lo))));
            }
          }
        }
        break;
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// ---------------------------------------------------------------------------

DenseMatrix random_orthonormal_columns(std::size_t m, std::size_t n, Rng& rng) {
  if (m < n) {
    throw ContractError("random_orthonormal_columns: require m >= n");
  }
  DenseMatrix g(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      g(i, j) = rng.normal();
    }
  }

  // Householder QR in place. Reflector k is stored in reflectors[k] (length
  // m - k, unit norm); r_diag_sign keeps sign(R_kk) so Q can be fixed up to
  // the Haar measure.
  std::vector<Vector> reflectors(n);
  std::vector<double> r_diag_sign(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    auto col = g.column(k).subspan(k);
    const double alpha_norm = norm2(col);
    Vector v(col.begin(), col.end());
    const double alpha = col[0] >= 0.0 ? -alpha_norm : alpha_norm;
    v[0] -= alpha;
    const double vn = norm2(v);
    if (vn > 0.0) {
      scale(1.0 / vn, v);
    }
    r_diag_sign[k] = alpha >= 0.0 ? 1.0 : -1.0;
    for (std::size_t j = k; j < n; ++j) {
      auto cj = g.column(j).subspan(k);
      const double proj = 2.0 * dot(v, cj);
      axpy(-proj, v, cj);
    }
    reflectors[k] = std::move(v);
  }

  // Q = H_0 H_1 ... H_{n-1} [I; 0], accumulated from the right.
  DenseMatrix q(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    q(j, j) = 1.0;
  }
  for (std::size_t k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    for (std::size_t j = k; j < n; ++j) {
      auto cj = q.column(j).subspan(k);
      const double proj = 2.0 * dot(v, cj);
      axpy(-proj, v, cj);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (r_diag_sign[j] < 0.0) {
      scale(-1.0, q.column(j));
    }
  }
  return q;
}

GeneratedMatrix matrix_with_spectrum(std::size_t m, std::size_t n, const SpectrumSpec& spec,
                                     Rng& rng) {
  if (n == 0 || m < n) {
    throw ContractError("matrix_with_spectrum: require m >= n >= 1");
  }
  if (spec.size() != n) {
    throw ContractError("matrix_with_spectrum: spectrum has " + std::to_string(spec.size()) +
                        " values, expected " + std::to_string(n));
  }
  std::vector<double> sigma = spec.values();
  DenseMatrix u = random_orthonormal_columns(m, n, rng);
  DenseMatrix v = random_orthonormal_columns(n, n, rng);

  DenseMatrix a(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto aj = a.column(j);
    for (std::size_t k = 0; k < n; ++k) {
      const double coeff = sigma[k] * v(j, k);
      if (coeff != 0.0) {
        axpy(coeff, u.column(k), aj);
      }
    }
  }
  return {std::move(a), std::move(v), std::move(sigma)};
}

// ---------------------------------------------------------------------------

namespace {

using Seg = SpectrumSegment;

Preset make_preset(std::string_view name) {
  if (name == "fig1") {
    return {"fig1", 1000, 400,
            {{Seg::constant(90, 1.0), Seg::logarithmic(300, 1e-3, 1e-2), Seg::constant(10, 1e-8)}}};
  }
  if (name == "fig1_deep") {
    return {"fig1_deep", 1000, 400,
            {{Seg::constant(90, 1.0), Seg::logarithmic(300, 1e-3, 1e-2),
              Seg::constant(10, 1e-13)}}};
  }
  if (name == "fig3_rankdef") {
    return {"fig3_rankdef", 1000, 400,
            {{Seg::constant(90, 1.0), Seg::logarithmic(300, 1e-3, 1e-2),
              Seg::constant(10, 1e-16)}}};
  }
  if (name == "fig4_inconsistent") {
    return {"fig4_inconsistent", 1000, 400,
            {{Seg::logarithmic(50, 1e-10, 1e-9), Seg::logarithmic(50, 1e-1, 1.0),
              Seg::constant(300, 1.0)}}};
  }
  if (name == "fig6_linear") {
    return {"fig6_linear", 1000, 400, {{Seg::linear(400, 1e-8, 1.0)}}};
  }
  if (name == "fig7_log") {
    return {"fig7_log", 1000, 400, {{Seg::logarithmic(200, 1e-3, 1.0), Seg::constant(200, 1.0)}}};
  }
  if (name == "fig8_clusters") {
    return {"fig8_clusters", 1000, 400,
            {{Seg::constant(10, 1e-10), Seg::constant(10, 1e-7), Seg::logarithmic(300, 1e-3, 1e-2),
              Seg::constant(80, 1.0)}}};
  }
  throw ContractError("unknown preset '" + std::string(name) + "'");
}

}  // namespace

Preset preset(std::string_view name) { return make_preset(name); }

std::vector<std::string> preset_names() {
  return {"fig1",        "fig1_deep", "fig3_rankdef", "fig4_inconsistent",
          "fig6_linear", "fig7_log",  "fig8_clusters"};
}

Preset scaled(const Preset& p, std::size_t divisor) {
  if (divisor == 0 || divisor > p.n) {
    throw ContractError("scaled: divisor must lie in [1, n]");
  }
  Preset out = p;
  out.m = p.m / divisor;
  out.n = p.n / divisor;

  // Largest-remainder apportionment of out.n among the segments.
  const auto& segs = p.spectrum.segments;
  std::vector<std::size_t> counts(segs.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double exact = static_cast<double>(segs[k].count) * static_cast<double>(out.n) /
                         static_cast<double>(p.n);
    counts[k] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[k];
    remainders.emplace_back(exact - std::floor(exact), k);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < out.n; ++k, ++assigned) {
    ++counts[remainders[k].second];
  }
  for (std::size_t k = 0; k < segs.size(); ++k) {
    out.spectrum.segments[k].count = counts[k];
  }
  out.name = p.name + "/" + std::to_string(divisor);
  return out;
}

SparseMatrixCsr random_sign_matrix(std::size_t m, std::size_t n, Rng& rng,
                                   std::size_t nnz_per_col) {
  if (nnz_per_col > m) {
    throw ContractError("random_sign_matrix: nnz_per_col exceeds the row count");
  }
  std::vector<Triplet> entries;
  entries.reserve(n * nnz_per_col);
  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < n; ++j) {
    // Floyd's algorithm: nnz_per_col distinct rows, uniformly.
    picked.clear();
    for (std::size_t r = m - nnz_per_col; r < m; ++r) {
      const std::size_t candidate = rng.below(r + 1);
      if (std::find(picked.begin(), picked.end(), candidate) == picked.end()) {
        picked.push_back(candidate);
      } else {
        picked.push_back(r);
      }
    }
    for (std::size_t row : picked) {
      const double sign = (rng.next_u64() >> 63) != 0 ? 1.0 : -1.0;
      entries.push_back({row, j, sign});
    }
  }
  return SparseMatrixCsr::from_triplets(m, n, std::move(entries));
}

SpectrumSpec parse_spectrum(std::string_view text) {
  SpectrumSpec spec;
  std::string all(text);
  std::stringstream segs(all);
  std::string seg;
  while (std::getline(segs, seg, ',')) {
    std::vector<std::string> parts;
    std::stringstream fields(seg);
    std::string f;
    while (std::getline(fields, f, ':')) {
      parts.push_back(f);
    }
    try {
      if (parts.size() == 3 && parts[0] == "const") {
        spec.segments.push_back(Seg::constant(std::stoul(parts[1]), std::stod(parts[2])));
      } else if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
        const auto count = std::stoul(parts[1]);
        const double lo = std::stod(parts[2]);
        const double hi = std::stod(parts[3]);
        spec.segments.push_back(parts[0] == "lin" ? Seg::linear(count, lo, hi)
                                                  : Seg::logarithmic(count, lo, hi));
      } else {
        throw ContractError("malformed spectrum segment '" + seg + "'");
      }
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const ContractError*>(&e) != nullptr) throw;
      throw ContractError("malformed spectrum segment '" + seg + "'");
    }
  }
  if (spec.segments.empty()) {
    throw ContractError("empty spectrum description");
  }
  (void)spec.values();  // validates ranges
  return spec;
}

}  // namespace condest
