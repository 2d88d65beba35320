// Command-line front end: evaluates Chabauty-Kim finiteness criteria and
// S-integral point bounds for affine hyperbolic curves.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ckim/analyze.hpp"
#include "ckim/regressions.hpp"

namespace {

using namespace ckim;

constexpr int kExitOk = 0;
constexpr int kExitRegressionFailure = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitInadmissiblePrime = 3;
constexpr int kExitInconsistency = 4;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RequestParseError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

std::set<int64_t> parse_prime_list(const std::string& text) {
  std::set<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.insert(std::stoll(item));
  }
  return out;
}

std::map<int64_t, long long> parse_component_list(const std::string& text) {
  std::map<int64_t, long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw RequestParseError("--nl expects entries of the form ell=n_ell");
    out[std::stoll(item.substr(0, eq))] = std::stoll(item.substr(eq + 1));
  }
  return out;
}

struct AnalyzeFlags {
  std::string request_path;
  std::string json_path;
  std::string variant;
  std::string quotient;
  std::string reduction_mode;
  bool depth1 = false;
  long truncation = -1;
  int64_t p = 0;
  std::string S;
  std::string nl;
  long long hbk = -1;
};

void apply_overrides(AnalysisRequest& req, const AnalyzeFlags& flags) {
  if (!flags.variant.empty()) {
    if (flags.variant == "selmer") req.options.variant = Variant::Selmer;
    else if (flags.variant == "bd") req.options.variant = Variant::BalakrishnanDogra;
    else throw RequestParseError("--variant must be selmer or bd");
  }
  if (!flags.quotient.empty()) {
    if (flags.quotient == "ab") req.options.kinds = {QuotientKind::Abelianized};
    else if (flags.quotient == "abat") req.options.kinds = {QuotientKind::AbelianByArtinTate};
    else if (flags.quotient == "w2") req.options.kinds = {QuotientKind::FullWeightTwo};
    else if (flags.quotient == "all")
      req.options.kinds = {QuotientKind::Abelianized, QuotientKind::AbelianByArtinTate,
                           QuotientKind::FullWeightTwo};
    else throw RequestParseError("--quotient must be ab, abat, w2 or all");
  }
  if (!flags.reduction_mode.empty()) {
    if (flags.reduction_mode == "generic") req.options.reduction_modes = {ReductionMode::Generic};
    else if (flags.reduction_mode == "refined")
      req.options.reduction_modes = {ReductionMode::Refined};
    else if (flags.reduction_mode == "both")
      req.options.reduction_modes = {ReductionMode::Generic, ReductionMode::Refined};
    else throw RequestParseError("--reduction-mode must be generic, refined or both");
  }
  if (flags.depth1) req.options.depth1 = true;
  if (flags.truncation >= 0) {
    if (flags.truncation < 2 || flags.truncation > 16)
      throw RequestParseError("--truncation must lie in [2, 16]");
    req.options.truncation = flags.truncation;
  }
  if (flags.p != 0) req.p = flags.p;
  if (!flags.S.empty()) req.S = parse_prime_list(flags.S);
  if (!flags.nl.empty())
    for (const auto& [ell, n_ell] : parse_component_list(flags.nl)) req.bad_components[ell] = n_ell;
  if (flags.hbk >= 0) req.arithmetic.h_bk = flags.hbk;
  if (req.p != 0 && req.S.count(req.p)) throw RequestParseError("p must not lie in S");
}

int cmd_analyze(const AnalyzeFlags& flags) {
  AnalysisRequest req = request_from_json(load_json(flags.request_path));
  apply_overrides(req, flags);
  AnalysisReport rep = run_analysis(req);
  std::cout << text_report(rep);
  if (!flags.json_path.empty()) {
    std::string payload = canonical_dump(report_to_json(rep));
    if (flags.json_path == "-") {
      std::cout << payload;
    } else {
      std::ofstream out(flags.json_path, std::ios::binary);
      if (!out) throw RequestParseError("cannot write " + flags.json_path);
      out << payload;
    }
  }
  return kExitOk;
}

int cmd_examples() {
  std::vector<RegressionRow> rows = run_paper_regressions();
  bool all_pass = true;
  std::printf("%-72s %s\n", "regression", "status");
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    std::printf("%-72s %s\n", row.name.c_str(), row.pass ? "PASS" : "FAIL");
    if (!row.detail.empty()) std::printf("    %s\n", row.detail.c_str());
  }
  std::printf("%zu regressions, %s\n", rows.size(), all_pass ? "all passed" : "FAILURES PRESENT");
  return all_pass ? kExitOk : kExitRegressionFailure;
}

int cmd_pointcount(const std::string& path, int64_t p) {
  json j = load_json(path);
  CurveSpec spec = curve_from_json(j.contains("curve") ? j.at("curve") : j);
  ValidatedCurve vc = validate(spec);
  PointCount pc = count_points(vc, p);
  GeometricInvariants inv = invariants(vc);
  std::cout << "p=" << p << "  #Y(F_p)=" << pc.y_count << "  #D(F_p)=" << pc.cusp_count
            << "  #X(F_p)=" << pc.x_count
            << "  Hasse-Weil margin=" << hasse_weil_margin(inv, pc, p) << "\n";
  return kExitOk;
}

int cmd_series(const std::string& path, long truncation) {
  json j = load_json(path);
  QuotientDescriptor desc;
  long long s = j.value("s", 0LL);
  if (j.contains("pieces")) {
    for (const auto& piece : j.at("pieces")) {
      GradedPieceDims dims;
      dims.weight = piece.at("weight").get<int>();
      dims.dim_global = piece.value("dim_global", 0LL);
      dims.dim_local = piece.value("dim_local", 0LL);
      dims.label = piece.value("label", std::string());
      desc.pieces.push_back(dims);
    }
  } else {
    std::string kind = j.value("kind", std::string("w2"));
    QuotientKind qk;
    if (kind == "ab") qk = QuotientKind::Abelianized;
    else if (kind == "abat") qk = QuotientKind::AbelianByArtinTate;
    else if (kind == "w2") qk = QuotientKind::FullWeightTwo;
    else throw RequestParseError("series: kind must be ab, abat or w2");
    if (!j.contains("curve")) throw RequestParseError("series: need \"pieces\" or \"curve\"");
    ValidatedCurve vc = validate(curve_from_json(j.at("curve")));
    GeometricInvariants inv = invariants(vc);
    ArithmeticInputs arith_in;
    if (j.contains("arithmetic")) {
      const json& a = j.at("arithmetic");
      arith_in.r = a.value("r", 0LL);
      if (a.contains("r_p")) arith_in.r_p = a.at("r_p").get<long long>();
      if (a.contains("rho")) arith_in.rho = a.at("rho").get<long long>();
      if (a.contains("rho_f")) arith_in.rho_f = a.at("rho_f").get<long long>();
      if (a.contains("rho_geo")) arith_in.rho_geo = a.at("rho_geo").get<long long>();
      if (a.contains("h_BK")) arith_in.h_bk = a.at("h_BK").get<long long>();
    }
    desc = build_quotient(qk, inv, resolve_arithmetic(arith_in, inv.g));
  }
  TruncatedSeries glob = hs_global(desc, s, truncation);
  TruncatedSeries loc = hs_local(desc, truncation);
  auto print = [](const char* name, const TruncatedSeries& series) {
    std::cout << name << " = [";
    for (std::size_t i = 0; i < series.coeffs().size(); ++i)
      std::cout << (i ? ", " : "") << series.coeffs()[i].get_str();
    std::cout << "]\n";
  };
  print("HS_glob", glob);
  print("HS_loc", loc);
  std::cout << "partial sums through t^2: glob=" << partial_sum(glob, 2).get_str()
            << " loc=" << partial_sum(loc, 2).get_str() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chabauty-Kim finiteness criteria and S-integral point bounds"};
  app.require_subcommand(1);

  AnalyzeFlags flags;
  CLI::App* analyze = app.add_subcommand("analyze", "run the full pipeline on a request file");
  analyze->add_option("request", flags.request_path, "JSON request file")->required();
  analyze->add_option("--json", flags.json_path, "write the canonical JSON report to PATH ('-' for stdout)");
  analyze->add_option("--variant", flags.variant, "criteria variant: selmer | bd");
  analyze->add_option("--quotient", flags.quotient, "quotient kinds: ab | abat | w2 | all");
  analyze->add_option("--reduction-mode", flags.reduction_mode, "generic | refined | both");
  analyze->add_flag("--depth1", flags.depth1, "also report the depth-1 bound (criterion beta - rho_f)");
  analyze->add_option("--truncation", flags.truncation, "Hilbert series truncation degree (2..16)");
  analyze->add_option("--p", flags.p, "auxiliary prime, overrides the request file");
  analyze->add_option("--S", flags.S, "comma-separated prime set, e.g. \"2,3\"");
  analyze->add_option("--nl", flags.nl, "special-fibre component counts, e.g. \"2=3,11=2\"");
  analyze->add_option("--hbk", flags.hbk, "value of h_BK, overrides the request file");

  CLI::App* examples = app.add_subcommand("examples", "run the built-in regression suite");

  std::string pointcount_path;
  int64_t pointcount_p = 0;
  CLI::App* pointcount = app.add_subcommand("pointcount", "count points of a curve over F_p");
  pointcount->add_option("curve", pointcount_path, "JSON file with a curve description")->required();
  pointcount->add_option("--p", pointcount_p, "prime p")->required();

  std::string series_path;
  long series_truncation = 2;
  CLI::App* series = app.add_subcommand("series", "print the global/local Hilbert series");
  series->add_option("descriptor", series_path, "JSON quotient descriptor or curve+kind file")
      ->required();
  series->add_option("--truncation", series_truncation, "truncation degree (2..16)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(flags);
    if (examples->parsed()) return cmd_examples();
    if (pointcount->parsed()) return cmd_pointcount(pointcount_path, pointcount_p);
    if (series->parsed()) return cmd_series(series_path, series_truncation);
  } catch (const InadmissiblePrime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInadmissiblePrime;
  } catch (const InputInconsistency& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistency;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const RequestParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const UnsupportedFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: invalid JSON: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}
