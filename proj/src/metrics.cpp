#include "hiertags/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hiertags/error.hpp"
#include "hiertags/parallel.hpp"
#include "hiertags/random.hpp"

namespace hiertags {

namespace {

/// recon expressed over the identifiers of exact.
Hierarchy comparable(const Hierarchy& exact, const Hierarchy& recon) {
  if (!recon.synthetic_root() && recon.names() == exact.names()) return recon;
  return align(exact, recon.without_synthetic_root());
}

double nmi_from_counts(std::size_t n, std::span<const std::size_t> de, std::span<const std::size_t> dr,
                       std::span<const std::size_t> both) {
  const double total = static_cast<double>(n);
  auto plogp = [&](std::size_t c) {
    if (c == 0) return 0.0;
    const double p = static_cast<double>(c) / total;
    return p * std::log(p);
  };
  double num = 0.0, den_e = 0.0, den_r = 0.0;
  bool identical = true;
  for (std::size_t i = 0; i < de.size(); ++i) {
    den_e += plogp(de[i]);
    den_r += plogp(dr[i]);
    identical = identical && de[i] == dr[i] && both[i] == de[i];
    if (both[i] == 0) continue;
    const double pe = static_cast<double>(de[i]) / total;
    const double pr = static_cast<double>(dr[i]) / total;
    const double per = static_cast<double>(both[i]) / total;
    num += per * ((std::log(per) - std::log(pe)) - std::log(pr));
  }
  const double den = den_e + den_r;
  if (den == 0.0) return identical ? 1.0 : 0.0;
  return std::max(0.0, -2.0 * num / den);
}

void require_links(const Hierarchy& a, const Hierarchy& b) {
  if (a.edge_count() == 0 && b.edge_count() == 0) throw Error("undefined NMI: both hierarchies are edgeless");
}

}  // namespace

LinkRatios link_ratios(const Hierarchy& exact, const Hierarchy& recon_in) {
  const Hierarchy recon = comparable(exact, recon_in);
  const DescendantTable below(exact);
  LinkRatios out;
  LinkCounts& c = out.counts;
  for (const Edge& e : recon.edges()) {
    const auto kids = exact.children(e.parent);
    if (std::find(kids.begin(), kids.end(), e.child) != kids.end()) ++c.exact;
    if (below.contains(e.parent, e.child)) {
      ++c.acceptable;
    } else if (below.contains(e.child, e.parent)) {
      ++c.inverted;
    } else {
      ++c.unrelated;
    }
  }
  const std::size_t target = exact.tag_count() > 0 ? exact.tag_count() - 1 : 0;
  const std::size_t m = recon.edge_count();
  c.missing = m < target ? target - m : 0;
  c.normalizer = std::max(target, m);
  if (c.normalizer > 0) {
    const double d = static_cast<double>(c.normalizer);
    out.r_E = static_cast<double>(c.exact) / d;
    out.r_A = static_cast<double>(c.acceptable) / d;
    out.r_I = static_cast<double>(c.inverted) / d;
    out.r_U = static_cast<double>(c.unrelated) / d;
    out.r_M = static_cast<double>(c.missing) / d;
  }
  return out;
}

double nmi(const Hierarchy& exact, const Hierarchy& recon_in) {
  const Hierarchy recon = comparable(exact, recon_in);
  require_links(exact, recon);
  const DescendantTable te(exact), tr(recon);
  const std::size_t n = exact.tag_count();
  std::vector<std::size_t> de(n), dr(n), both(n);
  for (TagId i = 0; i < n; ++i) {
    de[i] = te.size(i);
    dr[i] = tr.size(i);
    both[i] = te.intersection_size(i, tr);
  }
  return nmi_from_counts(n - 1, de, dr, both);
}

namespace {

/// Community of every tag: its descendants, found by breadth-first search.
std::vector<std::vector<TagId>> communities(const Hierarchy& h) {
  std::vector<std::vector<TagId>> out(h.tag_count());
  std::vector<std::size_t> seen(h.tag_count(), 0);
  for (TagId t = 0; t < h.tag_count(); ++t) {
    auto& c = out[t];
    for (TagId k : h.children(t)) {
      if (seen[k] != t + 1) {
        seen[k] = t + 1;
        c.push_back(k);
      }
    }
    for (std::size_t head = 0; head < c.size(); ++head) {
      for (TagId k : h.children(c[head])) {
        if (seen[k] != t + 1) {
          seen[k] = t + 1;
          c.push_back(k);
        }
      }
    }
    std::sort(c.begin(), c.end());
  }
  return out;
}

}  // namespace

double partition_nmi(const Hierarchy& exact, const Hierarchy& recon_in) {
  const Hierarchy recon = comparable(exact, recon_in);
  require_links(exact, recon);
  const auto ce = communities(exact), cr = communities(recon);
  const std::size_t n = exact.tag_count();
  const double total = static_cast<double>(n - 1);
  // Community sizes N_i, N_j and overlaps N_ij between the two communities
  // labelled by the same tag; the population is the N - 1 possible members.
  double num = 0.0, den_exact = 0.0, den_recon = 0.0;
  bool identical = true;
  std::vector<TagId> common;
  for (TagId t = 0; t < n; ++t) {
    common.clear();
    std::set_intersection(ce[t].begin(), ce[t].end(), cr[t].begin(), cr[t].end(), std::back_inserter(common));
    const double ni = static_cast<double>(ce[t].size());
    const double nj = static_cast<double>(cr[t].size());
    const double nij = static_cast<double>(common.size());
    identical = identical && ce[t] == cr[t];
    // Split so that identical communities give exactly -ni ln(ni / total).
    if (nij > 0) num += nij * (std::log(nij / ni) - std::log(nj / total));
    if (ni > 0) den_exact += ni * std::log(ni / total);
    if (nj > 0) den_recon += nj * std::log(nj / total);
  }
  const double den = den_exact + den_recon;
  if (den == 0.0) return identical ? 1.0 : 0.0;
  return std::max(0.0, -2.0 * num / den);
}

std::vector<double> isotonic_non_increasing(std::span<const double> values) {
  struct Block {
    double sum;
    std::size_t size;
    double mean() const { return sum / static_cast<double>(size); }
  };
  std::vector<Block> blocks;
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block last = blocks.back();
      blocks.pop_back();
      blocks.back().sum += last.sum;
      blocks.back().size += last.size;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const Block& b : blocks) out.insert(out.end(), b.size, b.mean());
  return out;
}

std::vector<double> CurveOptions::default_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(k / 20.0);
  return grid;
}

DecayCurve decay_curve(const Hierarchy& exact, const CurveOptions& options) {
  if (!exact.is_tree()) throw Error("decay curve needs a tree");
  if (options.runs < 1) throw Error("decay curve needs at least one run");
  if (options.grid.empty()) throw Error("decay curve needs a non-empty grid");
  for (double f : options.grid) {
    if (!(f >= 0.0 && f <= 1.0)) throw Error("rewiring fractions must lie in [0, 1]");
  }
  const std::size_t runs = static_cast<std::size_t>(options.runs);
  std::vector<double> cell(options.grid.size() * runs);
  parallel_for(cell.size(), options.threads, [&](std::size_t idx) {
    Rng rng(mix_seed(options.seed, idx));
    const Hierarchy rewired = rewire(exact, options.grid[idx / runs], options.order, rng);
    cell[idx] = exact.edge_count() == 0 ? 1.0 : nmi(exact, rewired);
  });
  DecayCurve curve;
  curve.f = options.grid;
  curve.runs = options.runs;
  for (std::size_t k = 0; k < options.grid.size(); ++k) {
    double sum = 0.0;
    for (std::size_t r = 0; r < runs; ++r) sum += cell[k * runs + r];
    curve.raw_mean.push_back(sum / static_cast<double>(runs));
  }
  curve.nmi = isotonic_non_increasing(curve.raw_mean);
  return curve;
}

double equivalent_rewiring(double value, const DecayCurve& curve) {
  if (curve.f.empty() || curve.f.size() != curve.nmi.size()) throw Error("empty decay curve");
  const auto& y = curve.nmi;
  if (value >= y.front()) return curve.f.front();
  if (value <= y.back()) return curve.f.back();
  // Smallest f at which the curve reaches the value.
  std::size_t k = 0;
  while (y[k + 1] > value) ++k;
  const double t = (y[k] - value) / (y[k] - y[k + 1]);
  return curve.f[k] + t * (curve.f[k + 1] - curve.f[k]);
}

QualityReport evaluate(const Hierarchy& exact, const Hierarchy& recon_in, const DecayCurve* curve) {
  const Hierarchy recon = comparable(exact, recon_in);
  QualityReport r;
  r.ratios = link_ratios(exact, recon);
  r.nmi = nmi(exact, recon);
  if (curve) r.lmi = lmi(r.nmi, *curve);
  r.tags = exact.tag_count();
  r.links = recon.edge_count();
  return r;
}

namespace {

std::string format(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_report(std::ostream& out, const QualityReport& r) {
  out << "r_E\t" << format(r.ratios.r_E) << '\n'
      << "r_A\t" << format(r.ratios.r_A) << '\n'
      << "r_I\t" << format(r.ratios.r_I) << '\n'
      << "r_U\t" << format(r.ratios.r_U) << '\n'
      << "r_M\t" << format(r.ratios.r_M) << '\n'
      << "nmi\t" << format(r.nmi) << '\n';
  if (r.lmi) out << "lmi\t" << format(*r.lmi) << '\n';
  out << "N\t" << r.tags << '\n' << "M_r\t" << r.links << '\n';
}

void write_curve(std::ostream& out, const DecayCurve& curve) {
  for (std::size_t k = 0; k < curve.f.size(); ++k) out << format(curve.f[k]) << '\t' << format(curve.nmi[k]) << '\n';
}

DecayCurve read_curve(std::istream& in) {
  DecayCurve curve;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    double f = 0, value = 0;
    if (!(fields >> f >> value) || !(fields >> std::ws).eof()) throw ParseError("expected 'f TAB I(f)'", n);
    if (!curve.f.empty() && !(f > curve.f.back())) throw ParseError("f values must increase", n);
    if (!curve.nmi.empty() && value > curve.nmi.back()) throw ParseError("I(f) must not increase", n);
    curve.f.push_back(f);
    curve.nmi.push_back(value);
  }
  if (curve.f.empty()) throw Error("empty decay curve");
  curve.raw_mean = curve.nmi;
  return curve;
}

}  // namespace hiertags
