// Command-line front end. JSON verdicts go to stdout, diagnostics to stderr.
// Exit status: 0 true/success, 1 false, 2 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "inqml/inqml.h"

namespace {

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Failure {
  inqml_status status;
};

void ok(inqml_status s) {
  if (s != INQML_OK) throw Failure{s};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};

using Model = Handle<inqml_model, inqml_model_free>;
using Formula = Handle<inqml_formula, inqml_formula_free>;
using Rel = Handle<inqml_relmodel, inqml_relmodel_free>;

struct Text {
  char* p = nullptr;
  ~Text() { inqml_string_free(p); }
};

int emit(Text& t, int verdict = 1) {
  std::cout << t.p << '\n';
  return verdict ? kTrue : kFalse;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read '" << path << "'\n";
    throw Failure{INQML_ERR_IO};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A model argument is a file path or "gen:chain:N", "gen:cycle:N", "gen:random:W:A:D".
void load_model(const std::string& arg, std::uint64_t seed, Model& m) {
  if (arg.rfind("gen:", 0) == 0) ok(inqml_model_generate(arg.c_str() + 4, seed, m.out()));
  else ok(inqml_model_load(arg.c_str(), m.out()));
}

bool is_relational_text(const std::string& text) { return text.find("\"S\"") != std::string::npos; }

// Relational input either as a relational file or as a model encoded with `kind`.
void load_relational(const std::string& arg, const std::string& kind, std::uint64_t seed, Rel& r) {
  if (arg.rfind("gen:", 0) != 0) {
    const std::string text = read_file(arg);
    if (is_relational_text(text)) {
      ok(inqml_relmodel_from_json(text.c_str(), r.out()));
      return;
    }
  }
  Model m;
  load_model(arg, seed, m);
  ok(inqml_encode(m.get(), kind.c_str(), r.out()));
}

const char* opt(const std::optional<std::string>& s) { return s ? s->c_str() : nullptr; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"inqml: inquisitive modal logic workbench"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  std::uint64_t budget = 0;
  app.add_option("--seed", seed, "Seed for random model generators")->capture_default_str();
  app.add_option("--budget", budget, "Bound for enumerations and game search (0: defaults)");

  // check
  std::string model_a, model_b, formula_text;
  std::optional<std::string> state_opt, world_opt;
  auto* check = app.add_subcommand("check", "Evaluate support at a state or truth at a world");
  check->add_option("model", model_a, "Model file or generator")->required();
  check->add_option("formula", formula_text, "Formula")->required();
  auto* st = check->add_option("--state", state_opt, "Comma-separated worlds; empty for the empty state");
  auto* wo = check->add_option("--world", world_opt, "World name");
  st->excludes(wo);

  // bisim
  std::string point_a, point_b;
  long rounds = -1;
  bool omega = false, state_points = false;
  auto* bisim = app.add_subcommand("bisim", "Decide (n-)bisimilarity of two pointed models");
  bisim->add_option("model_a", model_a, "Left model file or generator")->required();
  bisim->add_option("point_a", point_a, "World (or state with --states) of the left model")->required();
  bisim->add_option("model_b", model_b, "Right model file or generator")->required();
  bisim->add_option("point_b", point_b, "World (or state with --states) of the right model")->required();
  auto* nopt = bisim->add_option("-n", rounds, "Number of rounds");
  auto* oopt = bisim->add_flag("--omega", omega, "Unbounded game");
  nopt->excludes(oopt);
  bisim->add_flag("--states", state_points, "Points are comma-separated states");

  // charform
  unsigned depth = 0;
  bool literal = false;
  auto* charform = app.add_subcommand("charform", "Characteristic formula of a world or state");
  charform->add_option("model", model_a, "Model file or generator")->required();
  auto* cst = charform->add_option("--state", state_opt, "Comma-separated worlds");
  auto* cwo = charform->add_option("--world", world_opt, "World name");
  cst->excludes(cwo);
  charform->add_option("-n", depth, "Modal depth")->required();
  charform->add_flag("--literal", literal, "Enumerate inquisitive states literally instead of by type");

  // translate
  std::string mode = "resolution";
  auto* translate = app.add_subcommand("translate", "Standard translation into two-sorted first-order logic");
  translate->add_option("formula", formula_text, "Formula")->required();
  translate->add_option("--mode", mode)->check(CLI::IsMember({"direct", "resolution"}))->capture_default_str();

  // encode
  std::string kind = "rel";
  auto* encode = app.add_subcommand("encode", "Relational encoding of a model");
  encode->add_option("model", model_a, "Model file or generator")->required();
  encode->add_option("kind", kind, "rel, lf or full")->check(CLI::IsMember({"rel", "lf", "full"}))->required();

  // unfold
  unsigned ell = 2;
  std::string world_name;
  auto* unfold = app.add_subcommand("unfold", "Partial unfolding to depth ell");
  unfold->add_option("model", model_a, "Relational file, model file or generator")->required();
  unfold->add_option("world", world_name, "Root world")->required();
  unfold->add_option("--ell", ell, "Even depth, at least 2")->capture_default_str();
  unfold->add_option("--kind", kind, "Encoding for model input")
      ->check(CLI::IsMember({"rel", "lf", "full"}))
      ->capture_default_str();

  // upgrade-demo
  unsigned q = 1;
  auto* upgrade = app.add_subcommand("upgrade-demo", "Build M0/M1 and compare them in the q-round game");
  upgrade->add_option("model", model_a, "Model file or generator")->required();
  upgrade->add_option("world", world_name, "Distinguished world")->required();
  upgrade->add_option("-q", q, "Game rounds; the depth is 2^q")->capture_default_str();
  upgrade->add_option("--kind", kind)->check(CLI::IsMember({"rel", "lf", "full"}))->capture_default_str();

  // wf-demo
  unsigned wf_n = 2;
  auto* wf = app.add_subcommand("wf-demo", "Chain versus cycle: n-bisimilar but separated by well-foundedness");
  wf->add_option("n", wf_n, "Chain length minus two")->capture_default_str();

  // validate
  std::string file;
  auto* validate = app.add_subcommand("validate", "Validate a model or relational model file");
  validate->add_option("file", file, "Model or relational model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  inqml_set_budget(budget);
  try {
    Text out;
    int verdict = 0;
    if (*check) {
      if (!state_opt && !world_opt) {
        std::cerr << "error: one of --state and --world is required\n";
        return kError;
      }
      Model m;
      Formula f;
      load_model(model_a, seed, m);
      ok(inqml_formula_parse(formula_text.c_str(), f.out()));
      ok(inqml_check(m.get(), f.get(), opt(state_opt), opt(world_opt), &verdict, &out.p));
      return emit(out, verdict);
    }
    if (*bisim) {
      Model a, b;
      load_model(model_a, seed, a);
      load_model(model_b, seed, b);
      const long n = omega || nopt->count() == 0 ? -1 : rounds;
      if (state_points)
        ok(inqml_bisim(a.get(), nullptr, point_a.c_str(), b.get(), nullptr, point_b.c_str(), n, &verdict, &out.p));
      else
        ok(inqml_bisim(a.get(), point_a.c_str(), nullptr, b.get(), point_b.c_str(), nullptr, n, &verdict, &out.p));
      return emit(out, verdict);
    }
    if (*charform) {
      if (!state_opt && !world_opt) {
        std::cerr << "error: one of --state and --world is required\n";
        return kError;
      }
      Model m;
      load_model(model_a, seed, m);
      ok(inqml_charform(m.get(), opt(world_opt), opt(state_opt), depth, literal ? 1 : 0, &out.p));
      return emit(out);
    }
    if (*translate) {
      Formula f;
      ok(inqml_formula_parse(formula_text.c_str(), f.out()));
      ok(inqml_translate(f.get(), mode.c_str(), &out.p));
      return emit(out);
    }
    if (*encode) {
      Model m;
      Rel r;
      load_model(model_a, seed, m);
      ok(inqml_encode(m.get(), kind.c_str(), r.out()));
      ok(inqml_relmodel_to_json(r.get(), &out.p));
      return emit(out);
    }
    if (*unfold) {
      Rel r;
      load_relational(model_a, kind, seed, r);
      ok(inqml_unfold(r.get(), world_name.c_str(), ell, &out.p));
      return emit(out);
    }
    if (*upgrade) {
      Model m;
      load_model(model_a, seed, m);
      ok(inqml_upgrade_demo(m.get(), world_name.c_str(), kind.c_str(), q, &verdict, &out.p));
      return emit(out, verdict);
    }
    if (*wf) {
      ok(inqml_wf_demo(wf_n, &verdict, &out.p));
      return emit(out, verdict);
    }
    if (*validate) {
      const std::string text = read_file(file);
      ok(inqml_validate(text.c_str(), &verdict, &out.p));
      return emit(out, verdict);
    }
  } catch (const Failure& f) {
    const char* msg = inqml_last_error();
    std::cerr << "error (" << inqml_status_name(f.status) << ")";
    if (msg && *msg) std::cerr << ": " << msg;
    std::cerr << '\n';
    return kError;
  }
  return kError;
}
