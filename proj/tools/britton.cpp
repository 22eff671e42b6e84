// britton -- command-line front end: computations in free groups and in
// multiple HNN extensions with cyclic associated subgroups.
//
// Exit codes: 0 the predicate holds / a witness was found / the report
// verdict is true; 1 the predicate fails or nothing was found within bounds
// (for `order`, exit 0 covers both verdicts); 2 parse or usage error;
// 3 work budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include <britton/json_io.hpp>

namespace {

using namespace britton;

struct Options {
  std::string presentation_path;
  std::string output = "json";
  std::vector<std::string> words;
  std::string cert;
  std::string g_text;
  int max_factors = 3;
  int max_conj_len = 1;
  int radius = 2;
  std::string mode = "bi";
  unsigned long long search_budget = 1'000'000ULL;
  unsigned long long ball_budget = 100'000'000ULL;
};

void emit(const Options& opt, const nlohmann::json& j, const std::string& plain) {
  if (opt.output == "plain")
    std::cout << plain << '\n';
  else
    std::cout << j.dump(2) << '\n';
}

MultipleHnnPresentation require_presentation(const Options& opt) {
  if (opt.presentation_path.empty())
    throw CLI::ValidationError("-p/--presentation is required for this subcommand");
  return MultipleHnnPresentation::load(opt.presentation_path);
}

// Subcommands on plain free-group words accept a presentation (its base
// alphabet is used) or, without one, read the generators off the input in
// order of first appearance.
Alphabet word_alphabet(const Options& opt) {
  if (!opt.presentation_path.empty())
    return MultipleHnnPresentation::load(opt.presentation_path).base();
  std::vector<std::string> names;
  for (const auto& text : opt.words)
    for (auto token : detail::split_ws(text)) {
      if (token == "1") continue;
      auto f = detail::parse_factor(token);
      std::string name(f.name);
      if (std::find(names.begin(), names.end(), name) == names.end())
        names.push_back(std::move(name));
    }
  return Alphabet(names);
}

nlohmann::json load_certificate_json(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg[0] != '{') {
    std::ifstream in(arg);
    if (!in) throw parse_error("cannot open certificate file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("certificate is not valid JSON");
  return j;
}

int run_reduce(const Options& opt) {
  Alphabet a = word_alphabet(opt);
  Word w = parse_word(a, opt.words[0]);
  std::string s = format_word(a, w);
  emit(opt, {{"reduced", s}}, s);
  return 0;
}

int run_tl(const Options& opt) {
  Alphabet a = word_alphabet(opt);
  std::size_t n = translation_length(parse_word(a, opt.words[0]));
  emit(opt, {{"translation-length", n}}, std::to_string(n));
  return 0;
}

int run_conj(const Options& opt) {
  Alphabet a = word_alphabet(opt);
  bool c = is_conjugate(parse_word(a, opt.words[0]), parse_word(a, opt.words[1]));
  emit(opt, {{"conjugate", c}}, c ? "true" : "false");
  return c ? 0 : 1;
}

int run_triv(const Options& opt) {
  auto p = require_presentation(opt);
  HnnWord w = parse_hnn_word(p, opt.words[0]);
  PinchResult r = pinch_reduce(p, w);
  bool triv = r.word.purely_base() && r.word.base(0).empty();
  emit(opt,
       {{"trivial", triv}, {"reduced", format_hnn_word(p, r.word)}},
       triv ? "true" : "false");
  return triv ? 0 : 1;
}

int run_eq(const Options& opt) {
  auto p = require_presentation(opt);
  bool eq = are_equal(p, parse_hnn_word(p, opt.words[0]), parse_hnn_word(p, opt.words[1]));
  emit(opt, {{"equal", eq}}, eq ? "true" : "false");
  return eq ? 0 : 1;
}

int run_check_freeness(const Options& opt) {
  auto p = require_presentation(opt);
  FreenessReport r = check_freeness_hypotheses(p);
  std::string plain = std::string("verdict ") + (r.verdict ? "true" : "false");
  for (const auto& f : r.failures) plain += "; " + f;
  emit(opt, freeness_report_to_json(p, r), plain);
  return r.verdict ? 0 : 1;
}

int run_verify_gt(const Options& opt) {
  auto p = require_presentation(opt);
  TorsionCertificate c = certificate_from_json(p, load_certificate_json(opt.cert));
  bool valid = verify_certificate(p, c);
  emit(opt, {{"valid", valid}}, valid ? "true" : "false");
  return valid ? 0 : 1;
}

int run_search_gt(const Options& opt) {
  auto p = require_presentation(opt);
  HnnWord g = parse_hnn_word(p, opt.g_text);
  CertificateSearchResult r =
      search_certificate(p, g, opt.max_factors, opt.max_conj_len, opt.search_budget);
  if (r.status == SearchStatus::found) {
    nlohmann::json j = certificate_to_json(p, *r.certificate);
    std::string plain = "g = " + j["g"].get<std::string>() + "; conjugators =";
    for (const auto& h : j["conjugators"]) plain += ' ' + h.get<std::string>() + ',';
    plain.pop_back();
    emit(opt, j, plain);
    return 0;
  }
  bool budget = r.status == SearchStatus::budget_exhausted;
  std::string outcome = budget ? "budget-exhausted" : "none-within-bounds";
  emit(opt, {{"certificate", nullptr}, {"outcome", outcome}, {"nodes", r.nodes}}, outcome);
  return budget ? 3 : 1;
}

int run_order(const Options& opt) {
  auto p = require_presentation(opt);
  if (opt.mode != "left" && opt.mode != "bi")
    throw CLI::ValidationError("--mode must be 'left' or 'bi'");
  OrderMode mode = opt.mode == "bi" ? OrderMode::bi : OrderMode::left;
  Ball ball = enumerate_ball(p, opt.radius, opt.ball_budget);
  ConeVerdict v = search_cone(ball, mode);
  std::string plain = v.kind == ConeVerdict::Kind::refuted
                          ? "refuted"
                          : "no-obstruction (cone size " + std::to_string(v.cone.size()) + ")";
  emit(opt, cone_verdict_to_json(v, mode, opt.radius), plain);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"computations in free groups and cyclic multiple HNN extensions"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool presentation_required) {
    auto* o = cmd->add_option("-p,--presentation", opt.presentation_path,
                              "presentation file");
    if (presentation_required) o->required();
    cmd->add_option("--output", opt.output, "json or plain")
        ->check(CLI::IsMember({"json", "plain"}));
  };

  auto* reduce = app.add_subcommand("reduce", "freely reduced form of a word");
  reduce->add_option("word", opt.words, "word")->expected(1)->required();
  add_common(reduce, false);

  auto* tl = app.add_subcommand("tl", "translation length on the Cayley tree");
  tl->add_option("word", opt.words, "word")->expected(1)->required();
  add_common(tl, false);

  auto* conj = app.add_subcommand("conj", "conjugacy of two words in the free group");
  conj->add_option("words", opt.words, "two words")->expected(2)->required();
  add_common(conj, false);

  auto* triv = app.add_subcommand("triv", "triviality in the HNN extension");
  triv->add_option("word", opt.words, "word over base and stable letters")
      ->expected(1)->required();
  add_common(triv, true);

  auto* eq = app.add_subcommand("eq", "equality of two words in the HNN extension");
  eq->add_option("words", opt.words, "two words")->expected(2)->required();
  add_common(eq, true);

  auto* freeness = app.add_subcommand("check-freeness",
                                      "verify the tree-freeness hypotheses of the presentation");
  add_common(freeness, true);

  auto* verify = app.add_subcommand("verify-gt", "verify a generalized-torsion certificate");
  verify->add_option("--cert", opt.cert, "certificate JSON (file path or inline)")->required();
  add_common(verify, true);

  auto* search = app.add_subcommand("search-gt",
                                    "bounded search for a generalized-torsion certificate");
  search->add_option("-g", opt.g_text, "candidate element")->required();
  search->add_option("--max-factors", opt.max_factors, "max conjugate factors")->required();
  search->add_option("--max-conj-len", opt.max_conj_len, "max conjugator length")->required();
  search->add_option("--budget", opt.search_budget, "product-evaluation cap");
  add_common(search, true);

  auto* order = app.add_subcommand("order", "positive-cone search on a ball");
  order->add_option("--mode", opt.mode, "left or bi")->required()
      ->check(CLI::IsMember({"left", "bi"}));
  order->add_option("--radius", opt.radius, "ball radius")->required()
      ->check(CLI::NonNegativeNumber);
  order->add_option("--budget", opt.ball_budget, "equality-test cap for ball construction");
  add_common(order, true);

  try {
    app.parse(argc, argv);
    if (reduce->parsed()) return run_reduce(opt);
    if (tl->parsed()) return run_tl(opt);
    if (conj->parsed()) return run_conj(opt);
    if (triv->parsed()) return run_triv(opt);
    if (eq->parsed()) return run_eq(opt);
    if (freeness->parsed()) return run_check_freeness(opt);
    if (verify->parsed()) return run_verify_gt(opt);
    if (search->parsed()) return run_search_gt(opt);
    if (order->parsed()) return run_order(opt);
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const britton::budget_exhausted_error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const britton::parse_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
