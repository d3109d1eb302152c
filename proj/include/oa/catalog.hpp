#pragma once

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oa/aberration.hpp"
#include "oa/counting.hpp"
#include "oa/errors.hpp"
#include "oa/fraction_union.hpp"
#include "oa/hilbert.hpp"
#include "oa/parallel.hpp"
#include "oa/rational.hpp"

namespace oa {

struct CatalogOptions {
  /// 0 means all hardware threads.
  unsigned threads = 1;
  /// Share of candidates whose union GWLP is recomputed from the counting vector.
  double verify_fraction = 0.01;
  std::uint64_t seed = 20240229;
  std::size_t max_candidates = 50'000'000;
};

struct CatalogEntry {
  CountingVector y;
  /// Every composition type that produced y, e.g. "16-run" and "(8+8)-run".
  std::vector<std::string> provenance;
  Gwlp gwlp;
};

/// All OAs of one run size that arise as unions of basis elements.
class OaCatalog {
 public:
  OaCatalog(DesignSpace design, int strength, std::int64_t runs)
      : design_(std::move(design)), strength_(strength), runs_(runs) {}

  const DesignSpace& design() const noexcept { return design_; }
  int strength() const noexcept { return strength_; }
  std::int64_t runs() const noexcept { return runs_; }
  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Composition types in report order: fewer parts first, then by part sizes.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Candidates formed per type, before deduplication.
  std::size_t candidates(const std::string& label) const {
    auto it = candidates_.find(label);
    return it == candidates_.end() ? 0 : it->second;
  }
  /// Number of GWLPs that were recomputed directly as a check on the union formula.
  std::size_t verified() const noexcept { return verified_; }

 private:
  friend OaCatalog enumerate_size(const HilbertBasis&, std::int64_t, const CatalogOptions&);

  DesignSpace design_;
  int strength_;
  std::int64_t runs_;
  std::vector<CatalogEntry> entries_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> candidates_;
  std::size_t verified_ = 0;
};

namespace detail {

/// Multisets of part sizes (non-decreasing) drawn from `sizes` that sum to n.
inline void size_partitions(const std::vector<std::int64_t>& sizes, std::int64_t n, std::size_t from,
                            std::vector<std::int64_t>& parts, std::vector<std::vector<std::int64_t>>& out) {
  if (n == 0) {
    if (!parts.empty()) out.push_back(parts);
    return;
  }
  for (std::size_t i = from; i < sizes.size() && sizes[i] <= n; ++i) {
    parts.push_back(sizes[i]);
    size_partitions(sizes, n - sizes[i], i, parts, out);
    parts.pop_back();
  }
}

inline std::string composition_label(const std::vector<std::int64_t>& parts) {
  if (parts.size() == 1) return std::to_string(parts[0]) + "-run";
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts[i]);
  }
  return s + ")-run";
}

/// All multisets of size k from {first, ..., first + count - 1}, in lexicographic order.
inline void multisets(std::size_t first, std::size_t count, std::size_t k,
                      std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    out.push_back({});
    return;
  }
  if (count == 0) return;
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<std::size_t> m(k);
    for (std::size_t i = 0; i < k; ++i) m[i] = first + idx[i];
    out.push_back(std::move(m));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == count - 1) --i;
    if (i == 0) break;
    const std::size_t v = idx[i - 1] + 1;
    for (std::size_t j = i - 1; j < k; ++j) idx[j] = v;
  }
}

inline std::size_t multiset_count(std::size_t count, std::size_t k) {
  // C(count + k - 1, k), saturating.
  long double c = 1;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<long double>(count + k - i) / static_cast<long double>(i);
  return c > 1e18L ? static_cast<std::size_t>(1e18) : static_cast<std::size_t>(c + 0.5L);
}

}  // namespace detail

/// Every OA with n runs, as the distinct unions of basis-element multisets whose sizes
/// sum to n. Unrepresentable n gives an empty catalog.
inline OaCatalog enumerate_size(const HilbertBasis& basis, std::int64_t n, const CatalogOptions& options = {}) {
  if (n < 1) throw DomainError("run size must be positive");
  OaCatalog catalog(basis.design(), basis.strength(), n);
  const auto& el = basis.elements();

  std::vector<std::int64_t> sizes;
  std::map<std::int64_t, std::pair<std::size_t, std::size_t>> range;  // size -> [first, count)
  for (std::size_t i = 0; i < el.size(); ++i) {
    const auto s = el[i].runs();
    if (range.count(s) == 0) {
      sizes.push_back(s);
      range[s] = {i, 0};
    }
    ++range[s].second;
  }

  std::vector<std::vector<std::int64_t>> partitions;
  std::vector<std::int64_t> parts;
  detail::size_partitions(sizes, n, 0, parts, partitions);
  std::stable_sort(partitions.begin(), partitions.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });

  // Candidate = element indices of one multiset; label index alongside.
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> label_of;
  std::size_t planned = 0;
  for (const auto& p : partitions) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < p.size();) {
      std::size_t j = i;
      while (j < p.size() && p[j] == p[i]) ++j;
      count *= detail::multiset_count(range[p[i]].second, j - i);
      i = j;
    }
    planned += count;
    if (planned > options.max_candidates) {
      throw BudgetExceeded("catalog of size " + std::to_string(n) + " needs more than " +
                               std::to_string(options.max_candidates) + " candidates",
                           planned);
    }
  }
  for (const auto& p : partitions) {
    const std::string label = detail::composition_label(p);
    const std::size_t label_index = catalog.labels_.size();
    catalog.labels_.push_back(label);
    // Cartesian product over groups of equal sizes of the per-group multisets.
    std::vector<std::vector<std::size_t>> acc{{}};
    for (std::size_t i = 0; i < p.size();) {
      std::size_t j = i;
      while (j < p.size() && p[j] == p[i]) ++j;
      std::vector<std::vector<std::size_t>> group;
      detail::multisets(range[p[i]].first, range[p[i]].second, j - i, group);
      std::vector<std::vector<std::size_t>> next;
      for (const auto& a : acc) {
        for (const auto& g : group) {
          auto c = a;
          c.insert(c.end(), g.begin(), g.end());
          next.push_back(std::move(c));
        }
      }
      acc = std::move(next);
      i = j;
    }
    catalog.candidates_[label] = acc.size();
    for (auto& c : acc) {
      candidates.push_back(std::move(c));
      label_of.push_back(label_index);
    }
  }
  if (candidates.empty()) return catalog;

  std::vector<FractionSummary> summary;
  summary.reserve(el.size());
  for (const auto& e : el) summary.push_back(FractionSummary::of(e));

  // Which candidates get the direct recomputation: drawn once, up front, so the choice does
  // not depend on the thread count.
  std::vector<char> check(candidates.size(), 0);
  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(std::clamp(options.verify_fraction, 0.0, 1.0));
  for (auto& c : check) c = coin(rng) ? 1 : 0;

  std::vector<std::optional<CatalogEntry>> formed(candidates.size());
  const std::size_t chunks = std::min<std::size_t>(candidates.size(), 256);
  parallel_chunks(candidates.size(), chunks, resolve_threads(options.threads),
                  [&](std::size_t begin, std::size_t end, std::size_t) {
                    for (std::size_t k = begin; k < end; ++k) {
                      const auto& idx = candidates[k];
                      std::vector<CountingVector> ys;
                      std::vector<FractionSummary> ss;
                      for (auto i : idx) {
                        ys.push_back(el[i]);
                        ss.push_back(summary[i]);
                      }
                      auto y = union_counts(ys);
                      Gwlp g = idx.size() == 1 ? summary[idx[0]].gwlp : union_gwlp(ss);
                      if (check[k] && !(gwlp(y) == g)) {
                        throw Error("union formula disagrees with the direct GWLP for candidate " +
                                    std::to_string(k));
                      }
                      formed[k] = CatalogEntry{std::move(y), {catalog.labels_[label_of[k]]}, std::move(g)};
                    }
                  });
  catalog.verified_ = static_cast<std::size_t>(std::count(check.begin(), check.end(), 1));

  std::map<std::vector<std::int64_t>, std::size_t> seen;
  for (std::size_t k = 0; k < formed.size(); ++k) {
    auto& e = *formed[k];
    std::vector<std::int64_t> key(e.y.counts().begin(), e.y.counts().end());
    auto [it, inserted] = seen.emplace(std::move(key), catalog.entries_.size());
    if (inserted) {
      catalog.entries_.push_back(std::move(e));
    } else {
      auto& prov = catalog.entries_[it->second].provenance;
      if (std::find(prov.begin(), prov.end(), e.provenance[0]) == prov.end()) prov.push_back(e.provenance[0]);
    }
  }
  std::sort(catalog.entries_.begin(), catalog.entries_.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
    return std::lexicographical_compare(a.y.counts().begin(), a.y.counts().end(), b.y.counts().begin(),
                                        b.y.counts().end());
  });
  return catalog;
}

/// Entries whose GWLP is GMA-minimal; all ties.
inline std::vector<CatalogEntry> gma_best(const OaCatalog& catalog) {
  if (catalog.empty()) throw DomainError("empty catalog has no optimum");
  const Gwlp* best = &catalog.entries().front().gwlp;
  for (const auto& e : catalog.entries()) {
    if (gma_compare(e.gwlp, *best) == GmaOrder::better) best = &e.gwlp;
  }
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog.entries()) {
    if (gma_compare(e.gwlp, *best) == GmaOrder::equal) out.push_back(e);
  }
  return out;
}

/// One value of A_{t+1}: exact when the design is binary.
struct ReportValue {
  std::optional<Rational> exact;
  double approx = 0.0;

  std::string text() const { return exact ? to_string(*exact) : Gwlp::format_decimal(approx, 4); }
  std::string decimal() const { return Gwlp::format_decimal(approx, 4); }
  bool same(const ReportValue& o) const {
    if (exact && o.exact) return *exact == *o.exact;
    return std::abs(approx - o.approx) <= kZeroTolerance;
  }
  bool less(const ReportValue& o) const {
    if (exact && o.exact) return *exact < *o.exact;
    return approx < o.approx - kZeroTolerance;
  }
};

struct ClassificationReport {
  DesignSpace design{std::vector<int>{2}};
  int strength = 0;
  std::int64_t runs = 0;
  /// Index j of the tabulated A_j, namely t + 1.
  std::size_t word_length = 0;
  std::vector<std::string> labels;
  std::vector<std::size_t> candidates;
  std::vector<ReportValue> columns;
  /// counts[row][column]; an entry sits in the row of its first provenance label.
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> row_totals;
  std::size_t total = 0;
  /// Entries reachable through more than one composition type.
  std::size_t multi_type = 0;
  Gwlp optimum;
  std::size_t optimum_count = 0;
  /// Optimal entries per row label.
  std::vector<std::size_t> optimum_by_label;
  /// Smallest A_{t+1} allowed by the aggregated lower bound.
  Rational lower_bound{0};
};

inline ClassificationReport classify(const OaCatalog& catalog) {
  if (catalog.empty()) throw DomainError("cannot classify an empty catalog");
  const auto& design = catalog.design();
  const std::size_t j = static_cast<std::size_t>(catalog.strength()) + 1;
  if (j > design.factors()) throw DomainError("strength equals the factor count; there is no A_{t+1}");

  ClassificationReport r;
  r.design = design;
  r.strength = catalog.strength();
  r.runs = catalog.runs();
  r.word_length = j;
  r.labels = catalog.labels();
  for (const auto& l : r.labels) r.candidates.push_back(catalog.candidates(l));
  r.lower_bound = aggregated_lower_bound(design, catalog.strength(), catalog.runs());

  auto value_of = [&](const Gwlp& g) {
    ReportValue v;
    v.approx = g[j];
    if (g.is_exact()) v.exact = g.exact(j);
    return v;
  };
  for (const auto& e : catalog.entries()) {
    const auto v = value_of(e.gwlp);
    auto it = std::find_if(r.columns.begin(), r.columns.end(), [&](const ReportValue& c) { return c.same(v); });
    if (it == r.columns.end()) r.columns.push_back(v);
  }
  std::sort(r.columns.begin(), r.columns.end(), [](const auto& a, const auto& b) { return a.less(b); });

  r.counts.assign(r.labels.size(), std::vector<std::size_t>(r.columns.size(), 0));
  r.row_totals.assign(r.labels.size(), 0);
  auto row_of = [&](const std::string& label) {
    return static_cast<std::size_t>(std::find(r.labels.begin(), r.labels.end(), label) - r.labels.begin());
  };
  for (const auto& e : catalog.entries()) {
    const auto v = value_of(e.gwlp);
    const auto col = static_cast<std::size_t>(
        std::find_if(r.columns.begin(), r.columns.end(), [&](const ReportValue& c) { return c.same(v); }) -
        r.columns.begin());
    const auto row = row_of(e.provenance.front());
    ++r.counts[row][col];
    ++r.row_totals[row];
    ++r.total;
    if (e.provenance.size() > 1) ++r.multi_type;
  }

  const auto best = gma_best(catalog);
  r.optimum = best.front().gwlp;
  r.optimum_count = best.size();
  r.optimum_by_label.assign(r.labels.size(), 0);
  for (const auto& e : best) ++r.optimum_by_label[row_of(e.provenance.front())];
  return r;
}

inline std::string format_text(const ClassificationReport& r) {
  std::vector<std::vector<std::string>> grid;
  const std::string head = "A_" + std::to_string(r.word_length);
  std::vector<std::string> exact_row{head};
  std::vector<std::string> decimal_row{""};
  for (const auto& c : r.columns) {
    exact_row.push_back(c.text());
    decimal_row.push_back(c.exact ? c.decimal() : "");
  }
  exact_row.insert(exact_row.end(), {"total", "candidates"});
  decimal_row.insert(decimal_row.end(), {"", ""});
  grid.push_back(exact_row);
  const bool show_decimal = r.design.is_binary();
  if (show_decimal) grid.push_back(decimal_row);
  std::vector<std::size_t> column_totals(r.columns.size(), 0);
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    std::vector<std::string> row{r.labels[i]};
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      row.push_back(std::to_string(r.counts[i][c]));
      column_totals[c] += r.counts[i][c];
    }
    row.push_back(std::to_string(r.row_totals[i]));
    row.push_back(std::to_string(r.candidates[i]));
    grid.push_back(std::move(row));
  }
  std::vector<std::string> last{"total"};
  for (auto t : column_totals) last.push_back(std::to_string(t));
  last.push_back(std::to_string(r.total));
  std::size_t all_candidates = 0;
  for (auto c : r.candidates) all_candidates += c;
  last.push_back(std::to_string(all_candidates));
  grid.push_back(std::move(last));

  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  out << "OA(" << r.runs << ", " << r.design.to_string() << ", " << r.strength << "): " << r.total
      << " distinct arrays\n";
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      } else {
        out << "  " << std::right << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  }
  if (r.multi_type > 0) out << "arrays of more than one type: " << r.multi_type << '\n';
  out << "lower bound on A_" << r.word_length << ": " << to_string(r.lower_bound) << " ("
      << Gwlp::format_decimal(to_double(r.lower_bound), 4) << ")\n";
  out << "GMA optimum: A = " << r.optimum.to_string();
  if (r.optimum.is_exact()) out << " (" << r.optimum.to_decimal_string(4) << ")";
  out << ", " << r.optimum_count << " arrays";
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    if (r.optimum_by_label[i]) out << "; " << r.labels[i] << ": " << r.optimum_by_label[i];
  }
  out << '\n';
  return out.str();
}

/// Long format: type,A_j,A_j_decimal,count with one line per cell.
inline std::string format_csv(const ClassificationReport& r) {
  std::ostringstream out;
  const std::string a = "A_" + std::to_string(r.word_length);
  out << "type," << a << ',' << a << "_decimal,count\n";
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      out << r.labels[i] << ',' << r.columns[c].text() << ',' << r.columns[c].decimal() << ',' << r.counts[i][c]
          << '\n';
    }
  }
  return out.str();
}

}  // namespace oa
