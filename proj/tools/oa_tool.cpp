#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "oa/oa.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kFormat = 2,
  kIo = 3,
  kDomain = 4,
  kBudget = 5,
  kCheckFailed = 6,
  kInternal = 7,
};

const char* const kFractionFormats =
    "Fraction files: either a counting vector (one nonnegative integer per line, one line per run\n"
    "of the full factorial, runs in lexicographic order with the first factor varying slowest) or a\n"
    "run list (one run per line as space-separated 0-based level indices; repeated runs allowed).\n"
    "Blank lines and lines starting with '#' are ignored. The format is detected from the shape of\n"
    "the file unless --format is given.";

const char* const kBasisFormat =
    "Basis files: a header line 'r N' (r elements, N = runs of the full factorial) followed by r\n"
    "lines of N nonnegative integers, each a counting vector. Written in canonical order (run size,\n"
    "then lexicographic); read in any order. Lines starting with '#' are ignored.";

const char* const kMatrixFormat =
    "Matrix files: a header line 'rows cols' followed by one line of integers per row. Row k says\n"
    "that one cell of a t-factor marginal holds as many runs as the first cell of that marginal;\n"
    "the OAs of strength t are the nonnegative integer y with M y = 0.";

const char* const kDesignHelp = "Design: level counts, e.g. \"2 2 2 2 2\", \"2,3,3\" or \"2^5\"";

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

oa::FractionFormat parse_format(const std::string& s) {
  if (s == "auto") return oa::FractionFormat::automatic;
  if (s == "counts") return oa::FractionFormat::counts;
  return oa::FractionFormat::runs;
}

void print_gwlp(std::ostream& out, const oa::Gwlp& g) {
  out << "A = " << g.to_string() << '\n';
  if (g.is_exact()) out << "A (decimal) = " << g.to_decimal_string() << '\n';
}

void print_rational(std::ostream& out, const std::string& name, const oa::Rational& v) {
  out << name << " = " << oa::to_string(v) << " (" << oa::Gwlp::format_decimal(oa::to_double(v)) << ")\n";
}

void print_histogram(std::ostream& out, const oa::HilbertBasis& basis) {
  out << "Hilbert basis of OA(., " << basis.design().to_string() << ", " << basis.strength() << "): "
      << basis.size() << " elements\n";
  out << "runs  count\n";
  for (const auto& [runs, count] : basis.size_histogram()) out << std::setw(4) << runs << "  " << count << '\n';
}

void require_writable_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw oa::IoError("cannot create directory '" + dir + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal arrays: GWLPs, marginal cones, Hilbert bases and catalogs of fractions"};
  app.require_subcommand(1);
  app.footer(std::string(kDesignHelp) + "\n\nExit status: 0 ok, 1 usage, 2 malformed input, 3 file error, "
                                        "4 invalid arguments, 5 budget exceeded, 6 check failed, 7 internal error.\n"
                                        "Errors are reported on stderr as one line 'error: <kind>: <message>'.");
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0: all available)")->capture_default_str();

  std::string design_text;
  int t = 0;
  std::string format = "auto";
  auto add_design = [&](CLI::App* sub) { sub->add_option("--design,-d", design_text, kDesignHelp)->required(); };
  auto add_strength = [&](CLI::App* sub) {
    sub->add_option("--strength,-t", t, "Strength t of the orthogonal arrays")->required();
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Fraction file format")
        ->check(CLI::IsMember({"auto", "counts", "runs"}))
        ->capture_default_str();
  };

  auto* gwlp_cmd = app.add_subcommand("gwlp", "Generalized word-length pattern of a fraction");
  std::string fraction_path;
  add_design(gwlp_cmd);
  add_format(gwlp_cmd);
  gwlp_cmd->add_option("file", fraction_path, "Fraction file")->required();
  gwlp_cmd->footer(kFractionFormats);

  auto* verify_cmd = app.add_subcommand("verify", "Check whether a fraction is an OA of strength t");
  add_design(verify_cmd);
  add_strength(verify_cmd);
  add_format(verify_cmd);
  verify_cmd->add_option("file", fraction_path, "Fraction file")->required();
  verify_cmd->footer(std::string(kFractionFormats) + "\nExit status 6 when the fraction is not an OA of strength t.");

  auto* cone_cmd = app.add_subcommand("cone", "Export the marginal-equality matrix of OA(., D, t)");
  std::string out_path;
  bool comment = false;
  add_design(cone_cmd);
  add_strength(cone_cmd);
  cone_cmd->add_option("--out,-o", out_path, "Output file (default: stdout)");
  cone_cmd->add_flag("--comment", comment, "Start the file with a '#' line describing the encoding");
  cone_cmd->footer(kMatrixFormat);

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert basis of OA(., D, t)");
  bool verify = false;
  std::string import_path;
  std::string algorithm = "completion";
  std::size_t budget_elements = 20'000'000;
  double budget_seconds = 0;
  bool verbose = false;
  add_design(hilbert_cmd);
  add_strength(hilbert_cmd);
  hilbert_cmd->add_option("--out,-o", out_path, "Write the basis to this file");
  hilbert_cmd->add_flag("--verify", verify, "Check soundness and minimality of the basis");
  hilbert_cmd->add_option("--import", import_path, "Read the basis from a file instead of computing it")
      ;
  hilbert_cmd->add_option("--algorithm", algorithm, "completion or contejean-devie")
      ->check(CLI::IsMember({"completion", "contejean-devie"}))
      ->capture_default_str();
  hilbert_cmd->add_option("--budget-elements", budget_elements, "Abort when more vectors are held")
      ->capture_default_str();
  hilbert_cmd->add_option("--budget-seconds", budget_seconds, "Abort after this many seconds (0: no limit)")
      ->capture_default_str();
  hilbert_cmd->add_flag("--verbose,-v", verbose, "Progress on stderr");
  hilbert_cmd->footer(kBasisFormat);

  auto* union_cmd = app.add_subcommand("union", "Multiset union of fractions and its GWLP");
  std::vector<std::string> union_paths;
  std::string path_kind = "formula";
  add_design(union_cmd);
  add_format(union_cmd);
  union_cmd->add_option("files", union_paths, "Fraction files")->required();
  union_cmd->add_option("--path", path_kind,
                        "formula: GWLP from the parts' coefficients; direct: GWLP of the summed vector")
      ->check(CLI::IsMember({"formula", "direct"}))
      ->capture_default_str();
  union_cmd->add_option("--out,-o", out_path, "Write the union counting vector to this file");
  union_cmd->footer(kFractionFormats);

  auto* classify_cmd = app.add_subcommand("classify", "Enumerate and classify all OAs of a run size");
  std::int64_t n = 0;
  std::string basis_path;
  bool csv = false;
  std::string best_dir;
  double verify_fraction = 0.01;
  add_design(classify_cmd);
  add_strength(classify_cmd);
  classify_cmd->add_option("--n,-n", n, "Run size")->required();
  classify_cmd->add_option("--basis", basis_path, "Basis file (default: compute the basis)")
      ;
  classify_cmd->add_flag("--csv", csv, "Emit the table as CSV");
  classify_cmd->add_option("--best", best_dir, "Write every GMA-optimal array as a run list into this directory");
  classify_cmd->add_option("--verify-fraction", verify_fraction,
                           "Share of union GWLPs recomputed directly as a check")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  classify_cmd->footer(std::string(kBasisFormat) +
                       "\nOptimal arrays are written as run lists named best_001.txt, best_002.txt, ...");

  auto* bound_cmd = app.add_subcommand("bound", "Lower bound on A_{t+1} for OAs of strength t with n runs");
  add_design(bound_cmd);
  add_strength(bound_cmd);
  bound_cmd->add_option("--n,-n", n, "Run size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const auto design = oa::DesignSpace::parse(design_text);
    auto& out = std::cout;

    if (*gwlp_cmd) {
      const auto y = oa::read_fraction(fraction_path, design, parse_format(format));
      out << "n = " << y.runs() << '\n';
      out << "strength = " << oa::strength(y) << '\n';
      print_gwlp(out, oa::gwlp(y));
    } else if (*verify_cmd) {
      const auto y = oa::read_fraction(fraction_path, design, parse_format(format));
      const auto M = oa::constraint_matrix(design, t);
      const bool member = oa::is_member(y, M);
      out << "n = " << y.runs() << '\n';
      out << "strength = " << (y.runs() > 0 ? oa::strength(y) : 0) << '\n';
      out << "OA of strength " << t << ": " << (member ? "yes" : "no") << '\n';
      if (!member) return kCheckFailed;
    } else if (*cone_cmd) {
      const auto M = oa::constraint_matrix(design, t);
      if (out_path.empty()) {
        oa::write_matrix(out, M, comment);
      } else {
        std::ofstream file(out_path);
        if (!file) throw oa::IoError("cannot open '" + out_path + "' for writing");
        oa::write_matrix(file, M, comment);
      }
    } else if (*hilbert_cmd) {
      std::optional<oa::HilbertBasis> basis;
      if (!import_path.empty()) {
        basis = oa::read_basis(import_path, design, t);
      } else {
        oa::HilbertOptions options;
        options.algorithm = algorithm == "completion" ? oa::HilbertAlgorithm::completion
                                                      : oa::HilbertAlgorithm::contejean_devie;
        options.max_elements = budget_elements;
        options.max_seconds = budget_seconds;
        options.threads = threads;
        if (verbose) options.log = [](const std::string& s) { std::cerr << s << '\n'; };
        basis = oa::hilbert_basis(oa::constraint_matrix(design, t), options);
      }
      print_histogram(out, *basis);
      if (!out_path.empty()) oa::write_basis(out_path, *basis);
      if (verify) {
        const bool sound = oa::verify_soundness(*basis);
        const bool minimal = oa::verify_minimality(*basis);
        out << "soundness: " << (sound ? "ok" : "FAILED") << '\n';
        out << "minimality: " << (minimal ? "ok" : "FAILED") << '\n';
        if (!sound || !minimal) throw CheckFailed("basis verification failed");
      }
    } else if (*union_cmd) {
      std::vector<oa::CountingVector> parts;
      for (const auto& p : union_paths) parts.push_back(oa::read_fraction(p, design, parse_format(format)));
      const auto y = oa::union_counts(parts);
      oa::Gwlp g;
      if (path_kind == "formula") {
        std::vector<oa::FractionSummary> summaries;
        for (const auto& p : parts) summaries.push_back(oa::FractionSummary::of(p));
        g = oa::union_gwlp(summaries);
      } else {
        g = oa::gwlp(y);
      }
      out << "n = " << y.runs() << '\n';
      out << "Y =";
      for (auto c : y.counts()) out << ' ' << c;
      out << '\n';
      print_gwlp(out, g);
      if (!out_path.empty()) oa::write_file(out_path, y, oa::FractionFormat::counts);
    } else if (*classify_cmd) {
      if (!best_dir.empty()) require_writable_dir(best_dir);
      oa::HilbertOptions options;
      options.threads = threads;
      const auto basis = basis_path.empty() ? oa::hilbert_basis(oa::constraint_matrix(design, t), options)
                                            : oa::read_basis(basis_path, design, t);
      oa::CatalogOptions copts;
      copts.threads = threads;
      copts.verify_fraction = verify_fraction;
      const auto catalog = oa::enumerate_size(basis, n, copts);
      if (catalog.empty()) {
        out << "no OA(" << n << ", " << design.to_string() << ", " << t << ") arises from the basis\n";
        return kOk;
      }
      const auto report = oa::classify(catalog);
      out << (csv ? oa::format_csv(report) : oa::format_text(report));
      if (!best_dir.empty()) {
        const auto best = oa::gma_best(catalog);
        for (std::size_t i = 0; i < best.size(); ++i) {
          std::ostringstream name;
          name << "best_" << std::setw(3) << std::setfill('0') << i + 1 << ".txt";
          oa::write_file((std::filesystem::path(best_dir) / name.str()).string(), best[i].y,
                         oa::FractionFormat::runs);
        }
      }
    } else if (*bound_cmd) {
      print_rational(out, "lower bound on A_" + std::to_string(t + 1), oa::aggregated_lower_bound(design, t, n));
    }
    return kOk;
  } catch (const oa::FormatError& e) {
    std::cerr << "error: format: " << e.what() << '\n';
    return kFormat;
  } catch (const oa::IoError& e) {
    std::cerr << "error: io: " << e.what() << '\n';
    return kIo;
  } catch (const oa::BudgetExceeded& e) {
    std::cerr << "error: budget: " << e.what() << '\n';
    return kBudget;
  } catch (const oa::DimensionError& e) {
    std::cerr << "error: dimension: " << e.what() << '\n';
    return kDomain;
  } catch (const oa::DomainError& e) {
    std::cerr << "error: domain: " << e.what() << '\n';
    return kDomain;
  } catch (const CheckFailed& e) {
    std::cerr << "error: check: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return kInternal;
  }
}
