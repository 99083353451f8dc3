#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "fanolab/applications.hpp"
#include "fanolab/birge.hpp"
#include "fanolab/fano.hpp"
#include "fanolab/kl_bounds.hpp"
#include "fanolab/verify.hpp"
#include "json.hpp"

using namespace fanolab;

namespace {

enum class ExitCode { Ok = 0, VerifyFailed = 1, BadInput = 2, Precondition = 3 };

enum class Format { Csv, JsonLines, Plain };

struct Options {
  Format format = Format::Csv;
  bool precise = false;
};

std::string number(double v, bool precise) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, precise ? "%.17g" : "%.6g", v);
  return buf;
}

std::string number(ExtReal v, bool precise) {
  return v.is_infinite() ? "inf" : number(v.to_double(), precise);
}

using Cell = std::variant<std::string, double, long long, bool>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_cell(const Cell& c, bool precise) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return number(*d, precise);
  if (const auto* n = std::get_if<long long>(&c)) return std::to_string(*n);
  return std::get<bool>(c) ? "true" : "false";
}

void print_table(const Table& t, const Options& opt) {
  switch (opt.format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < t.header.size(); ++i) std::cout << (i ? "," : "") << t.header[i];
      std::cout << '\n';
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::cout << (i ? "," : "") << csv_quote(render_cell(row[i], opt.precise));
        }
        std::cout << '\n';
      }
      break;
    }
    case Format::JsonLines: {
      for (const auto& row : t.rows) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < row.size(); ++i) {
          const Cell& c = row[i];
          if (const auto* d = std::get_if<double>(&c)) {
            if (std::isinf(*d) || !opt.precise) {
              // Same digits as the csv form.
              const std::string s = number(*d, opt.precise);
              if (std::isinf(*d)) {
                j[t.header[i]] = s;
              } else {
                j[t.header[i]] = std::stod(s);
              }
            } else {
              j[t.header[i]] = *d;
            }
          } else if (const auto* n = std::get_if<long long>(&c)) {
            j[t.header[i]] = *n;
          } else if (const auto* b = std::get_if<bool>(&c)) {
            j[t.header[i]] = *b;
          } else {
            j[t.header[i]] = std::get<std::string>(c);
          }
        }
        std::cout << j.dump() << '\n';
      }
      break;
    }
    case Format::Plain: {
      for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          std::cout << (i ? "  " : "") << t.header[i] << '=' << render_cell(row[i], opt.precise);
        }
        std::cout << '\n';
      }
      break;
    }
  }
}

double parse_double(const std::string& text, bool allow_inf) {
  if (allow_inf && (text == "inf" || text == "+inf")) return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\r')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + text + "'");
  }
  return v;
}

ExtReal parse_ext(const std::string& text) { return ExtReal::of(parse_double(text, true)); }

// Records `weight,p_exp,q_exp,div`; blank lines and lines starting with '#' are skipped.
std::vector<FamilyEntry> read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open family file '" + path + "'");
  std::vector<FamilyEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 4) {
      throw Error(ErrorCode::InvalidArgument,
                  "line " + std::to_string(line_no) + ": expected weight,p_exp,q_exp,div");
    }
    entries.push_back({parse_double(fields[0], false), parse_double(fields[1], false),
                       parse_double(fields[2], false), parse_ext(fields[3])});
  }
  if (entries.empty()) throw Error(ErrorCode::BadWeights, "the family file has no records");
  return entries;
}

GeneratorKind parse_generator(const std::string& name) {
  if (name == "kl") return GeneratorKind::KL;
  if (name == "chi2") return GeneratorKind::CHI2;
  if (name == "hellinger") return GeneratorKind::HELLINGER;
  throw Error(ErrorCode::InvalidArgument, "unknown divergence '" + name + "'");
}

void add_format_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--format", opt.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::Csv}, {"json-lines", Format::JsonLines},
                                        {"plain", Format::Plain}},
          CLI::ignore_case));
  cmd->add_flag("--precise", opt.precise, "Print full precision instead of 6 significant digits");
}

Table bounds_table(const ReducedPair& r, GeneratorKind kind, std::optional<double> p_bar) {
  std::vector<FanoReport> reports;
  switch (kind) {
    case GeneratorKind::KL:
      reports.push_back(fano_kl(r, KlVariant::Classic));
      reports.push_back(fano_kl(r, KlVariant::Refined));
      reports.push_back(fano_kl(r, KlVariant::Affine));
      reports.push_back(fano_kl_sqrt(r, true));
      reports.push_back(fano_kl_sqrt(r, false));
      reports.push_back(fano_kl_inverse(r));
      break;
    case GeneratorKind::CHI2:
      reports.push_back(fano_chi2(r));
      break;
    case GeneratorKind::HELLINGER: {
      reports.push_back(fano_hellinger(r));
      const SolvedBound sharp = lecam_hellinger(r.d_bar.to_double(), r.q_bar, true);
      reports.push_back({r, sharp.family, sharp.bound_on_p, BoundDirection::UpperOnP});
      break;
    }
  }
  Table t{{"family", "q_bar", "d_bar", "bound", "vacuous", "p_bar", "p_bar_within_bound"}, {}};
  for (const FanoReport& f : reports) {
    std::vector<Cell> row{std::string(bound_family_name(f.family)), r.q_bar,
                          r.d_bar.is_infinite() ? std::numeric_limits<double>::infinity() : r.d_bar.to_double(),
                          f.value, f.vacuous()};
    if (p_bar) {
      row.emplace_back(*p_bar);
      row.emplace_back(*p_bar <= f.value + verify::kIdentityTolerance);
    } else {
      row.emplace_back(std::string());
      row.emplace_back(std::string());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Divergence calculators, Fano-type bounds and their verification suite"};
  app.require_subcommand(1);

  Options opt;

  // div
  std::string div_f = "kl";
  std::vector<double> div_p;
  std::vector<double> div_q;
  auto* div = app.add_subcommand("div", "Divergence between two finite distributions");
  div->add_option("--f", div_f, "kl, chi2 or hellinger");
  div->add_option("--p", div_p, "Weights of P, comma separated")->required()->delimiter(',');
  div->add_option("--q", div_q, "Weights of Q, comma separated")->required()->delimiter(',');
  div->add_flag("--precise", opt.precise, "Full precision");

  // bounds
  std::string b_f = "kl";
  std::optional<double> b_p;
  std::optional<double> b_q;
  std::string b_d;
  std::string b_file;
  auto* bounds = app.add_subcommand("bounds", "Fano-type bounds from averaged quantities or a family file");
  bounds->add_option("--f", b_f, "Divergence the averaged value refers to: kl, chi2 or hellinger");
  bounds->add_option("--p", b_p, "Averaged E_P[Z], reported against each bound");
  auto* q_opt = bounds->add_option("--q", b_q, "Averaged E_Q[Z]");
  auto* d_opt = bounds->add_option("--d", b_d, "Averaged divergence (inf allowed)");
  auto* file_opt = bounds->add_option("--family", b_file, "File of weight,p_exp,q_exp,div records");
  file_opt->excludes(q_opt)->excludes(d_opt);
  add_format_flags(bounds, opt);

  // birge
  std::vector<long long> birge_n;
  auto* birge = app.add_subcommand("birge", "Birge constants c_N, d_N and the Massart constant");
  birge->add_option("--N", birge_n, "Values of N, comma separated")->required()->delimiter(',');
  add_format_flags(birge, opt);

  // apps
  auto* apps = app.add_subcommand("apps", "Application calculators");
  apps->require_subcommand(1);
  apps->fallthrough();
  add_format_flags(apps, opt);
  long long post_d = 1;
  auto* posterior = apps->add_subcommand("posterior", "Posterior concentration constant c_d");
  posterior->add_option("--d", post_d, "Dimension")->required();
  long long reg_n = 0;
  long long reg_s = 0;
  long long reg_t = 0;
  auto* regret = apps->add_subcommand("regret", "Sparse-loss regret lower bound");
  regret->add_option("--N", reg_n, "Number of experts")->required();
  regret->add_option("--s", reg_s, "Sparsity")->required();
  regret->add_option("--T", reg_t, "Horizon")->required();
  double cr_theta = 0.0;
  double cr_x = 0.0;
  long long cr_n = 0;
  auto* cramer = apps->add_subcommand("cramer", "Exact binomial tail rate against -kl(x, theta)");
  cramer->add_option("--theta", cr_theta)->required();
  cramer->add_option("--x", cr_x)->required();
  cramer->add_option("--n", cr_n)->required();
  std::string dd_psi;
  long long dd_n = 0;
  double dd_c = 0.0;
  auto* dd = apps->add_subcommand("dd", "Distribution-dependent posterior lower bound 2^-c exp(-c n psi)");
  dd->add_option("--psi", dd_psi, "Modulus psi (inf allowed)")->required();
  dd->add_option("--n", dd_n)->required();
  dd->add_option("--c", dd_c)->required();

  // verify
  std::uint64_t v_seed = 0;
  std::string v_budget = "quick";
  unsigned v_threads = 0;
  Options v_opt;
  v_opt.format = Format::Plain;
  auto* ver = app.add_subcommand("verify", "Run the inequality verification suite");
  ver->add_option("--seed", v_seed, "Seed for every randomized check");
  ver->add_option("--budget", v_budget, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  ver->add_option("--threads", v_threads, "Worker threads (0 = all cores)");
  add_format_flags(ver, v_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::BadInput);
  }

  try {
    if (*div) {
      const FiniteDist p(div_p);
      const FiniteDist q(div_q);
      std::cout << number(divergence_finite(parse_generator(div_f), p, q), opt.precise) << '\n';
    } else if (*bounds) {
      const GeneratorKind kind = parse_generator(b_f);
      ReducedPair r{};
      if (!b_file.empty()) {
        const auto entries = read_family(b_file);
        r = reduce(entries);
        if (!b_p) b_p = r.p_bar;
      } else {
        if (!b_q || b_d.empty()) {
          throw Error(ErrorCode::InvalidArgument, "either --family or both --q and --d are required");
        }
        r = {b_p.value_or(0.0), *b_q, parse_ext(b_d)};
      }
      print_table(bounds_table(r, kind, b_p), opt);
    } else if (*birge) {
      Table t{{"N", "c_N", "d_N", "massart"}, {}};
      for (const BirgeConstants& row : comparison_table(birge_n)) {
        t.rows.push_back({row.n_hypotheses, row.c_n, row.d_n, row.massart});
      }
      print_table(t, opt);
    } else if (*posterior) {
      const PosteriorConstant c = posterior_constant(post_d);
      print_table({{"d", "c_d", "rho_star"}, {{post_d, c.c_d, c.rho_star}}}, opt);
    } else if (*regret) {
      const SparseRegretBound b = sparse_regret_bound(reg_n, reg_s, reg_t);
      print_table({{"N", "s", "T", "bound", "epsilon", "regime"},
                   {{reg_n, reg_s, reg_t, b.bound, b.epsilon_used, std::string(regime_name(b.regime))}}},
                  opt);
    } else if (*cramer) {
      const CramerRate c = cramer_rate(cr_theta, cr_x, cr_n);
      print_table({{"theta", "x", "n", "empirical_rate", "limit_rate"},
                   {{cr_theta, cr_x, cr_n, c.empirical_rate, c.limit_rate}}},
                  opt);
    } else if (*dd) {
      const ExtReal psi = parse_ext(dd_psi);
      const double v = posterior_dd_bound(psi, dd_n, dd_c);
      print_table({{"psi", "n", "c", "bound"},
                   {{psi.is_infinite() ? std::numeric_limits<double>::infinity() : psi.to_double(), dd_n, dd_c, v}}},
                  opt);
    } else if (*ver) {
      const verify::Budget budget = v_budget == "full" ? verify::Budget::Full : verify::Budget::Quick;
      const auto reports = verify::run_suite(v_seed, budget, v_threads);
      switch (v_opt.format) {
        case Format::Csv: std::cout << verify::to_csv(reports); break;
        case Format::JsonLines: std::cout << verify::to_json_lines(reports); break;
        case Format::Plain: std::cout << verify::to_plain(reports); break;
      }
      return static_cast<int>(verify::all_passed(reports) ? ExitCode::Ok : ExitCode::VerifyFailed);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (e.code() == ErrorCode::DegenerateQBar) {
      std::cerr << "precondition: the bound requires 0 < q_bar < 1\n";
      return static_cast<int>(ExitCode::Precondition);
    }
    return static_cast<int>(ExitCode::BadInput);
  }
  return static_cast<int>(ExitCode::Ok);
}
