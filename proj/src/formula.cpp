#include "inqml/formula.hpp"

#include <cctype>
#include <functional>
#include <limits>
#include <mutex>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace inqml {
namespace {

struct InternKey {
  Kind kind;
  std::string name;
  const FormulaNode* left;
  const FormulaNode* right;
  bool operator==(const InternKey&) const = default;
};

struct InternKeyHash {
  std::size_t operator()(const InternKey& k) const noexcept {
    std::size_t h = std::hash<std::string>{}(k.name);
    h ^= static_cast<std::size_t>(k.kind) * 0x9e3779b97f4a7c15ULL;
    h = h * 31 + std::hash<const void*>{}(k.left);
    h = h * 31 + std::hash<const void*>{}(k.right);
    return h;
  }
};

struct InternEntry {
  const FormulaNode* raw;
  std::weak_ptr<const FormulaNode> weak;
};

struct InternTable {
  std::mutex mu;
  std::unordered_map<InternKey, InternEntry, InternKeyHash> nodes;
};

InternTable& table() {
  static auto* t = new InternTable;  // outlives static-destruction order
  return *t;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
  return a > m - b ? m : a + b;
}

std::size_t mix(std::size_t h, std::size_t v) {
  return (h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

}  // namespace

FormulaNode::~FormulaNode() {
  InternTable& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  InternKey key{kind, name, left.node(), right.node()};
  auto it = t.nodes.find(key);
  if (it != t.nodes.end() && it->second.raw == this) t.nodes.erase(it);
}

Formula Formula::make(Kind k, std::string name, const Formula* l, const Formula* r) {
  InternTable& t = table();
  InternKey key{k, name, l ? l->node() : nullptr, r ? r->node() : nullptr};
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.nodes.find(key);
  if (it != t.nodes.end()) {
    if (auto alive = it->second.weak.lock()) return Formula(std::move(alive));
  }
  std::size_t h = mix(static_cast<std::size_t>(k) + 1, std::hash<std::string>{}(name));
  std::size_t depth = 0;
  std::uint64_t size = 1;
  bool declarative = true;
  bool standard = true;
  if (l) {
    h = mix(h, l->hash());
    depth = l->node()->modal_depth;
    size = sat_add(size, l->node()->tree_size);
    declarative = l->node()->declarative;
    standard = l->node()->standard_modal;
  }
  if (r) {
    h = mix(h, r->hash());
    depth = std::max(depth, r->node()->modal_depth);
    size = sat_add(size, r->node()->tree_size);
    declarative = declarative && r->node()->declarative;
    standard = standard && r->node()->standard_modal;
  }
  switch (k) {
    case Kind::Box:
      ++depth;
      declarative = true;
      break;
    case Kind::BoxPlus:
      ++depth;
      declarative = true;
      standard = false;
      break;
    case Kind::IDisj:
      declarative = false;
      standard = false;
      break;
    default:
      break;
  }
  auto node = std::shared_ptr<const FormulaNode>(new FormulaNode{
      k, std::move(name), l ? *l : Formula(nullptr), r ? *r : Formula(nullptr), h, depth,
      size, declarative, standard});
  t.nodes.insert_or_assign(key, InternEntry{node.get(), node});
  return Formula(std::move(node));
}

Formula::Formula() : Formula(bottom()) {}

Formula Formula::atom(std::string name) { return make(Kind::Atom, std::move(name), nullptr, nullptr); }
Formula Formula::bottom() { return make(Kind::Bottom, {}, nullptr, nullptr); }
Formula Formula::top() { return implies(bottom(), bottom()); }
Formula Formula::conj(const Formula& l, const Formula& r) { return make(Kind::And, {}, &l, &r); }
Formula Formula::implies(const Formula& l, const Formula& r) { return make(Kind::Implies, {}, &l, &r); }
Formula Formula::idisj(const Formula& l, const Formula& r) { return make(Kind::IDisj, {}, &l, &r); }
Formula Formula::box(const Formula& sub) { return make(Kind::Box, {}, &sub, nullptr); }
Formula Formula::boxplus(const Formula& sub) { return make(Kind::BoxPlus, {}, &sub, nullptr); }

Formula Formula::neg(const Formula& f) { return implies(f, bottom()); }
Formula Formula::cdisj(const Formula& l, const Formula& r) {
  return neg(conj(neg(l), neg(r)));
}
Formula Formula::question(const Formula& f) { return idisj(f, neg(f)); }

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::cdisj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = cdisj(acc, fs[i]);
  return acc;
}

Formula Formula::idisj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = idisj(acc, fs[i]);
  return acc;
}

Kind Formula::kind() const noexcept { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }
std::size_t Formula::hash() const noexcept { return node_->hash; }

void push_unique(std::vector<Formula>& out, const Formula& f) {
  for (const Formula& g : out)
    if (g == f) return;
  out.push_back(f);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Bottom, Not, Question, Box, BoxPlus, And, Or, IOr, Arrow, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view p) { return s.substr(i, p.size()) == p; };
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), at});
      i = j;
    } else if (starts("_|_")) {
      out.push_back({Tok::Bottom, "_|_", at});
      i += 3;
    } else if (starts("[+]")) {
      out.push_back({Tok::BoxPlus, "[+]", at});
      i += 3;
    } else if (starts("[]")) {
      out.push_back({Tok::Box, "[]", at});
      i += 2;
    } else if (starts("->")) {
      out.push_back({Tok::Arrow, "->", at});
      i += 2;
    } else if (starts("\\/")) {
      out.push_back({Tok::IOr, "\\/", at});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, "~", at});
      ++i;
    } else if (c == '?') {
      out.push_back({Tok::Question, "?", at});
      ++i;
    } else if (c == '&') {
      out.push_back({Tok::And, "&", at});
      ++i;
    } else if (c == '|') {
      out.push_back({Tok::Or, "|", at});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::LParen, "(", at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::RParen, ")", at});
      ++i;
    } else {
      throw ParseError("unknown token '" + std::string(1, s[i]) + "'", at);
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != Tok::End) unexpected();
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void unexpected() const {
    const Token& t = peek();
    if (t.kind == Tok::End) throw ParseError("unexpected end of input", t.pos);
    throw ParseError("unexpected token '" + t.text + "'", t.pos);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      take();
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (peek().kind == Tok::Or || peek().kind == Tok::IOr) {
      const bool inquisitive = take().kind == Tok::IOr;
      Formula rhs = conjunction();
      acc = inquisitive ? Formula::idisj(acc, rhs) : Formula::cdisj(acc, rhs);
    }
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (peek().kind == Tok::And) {
      take();
      acc = Formula::conj(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return Formula::neg(unary());
      case Tok::Question: take(); return Formula::question(unary());
      case Tok::Box: take(); return Formula::box(unary());
      case Tok::BoxPlus: take(); return Formula::boxplus(unary());
      default: return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: take(); return Formula::atom(t.text);
      case Tok::Bottom: take(); return Formula::bottom();
      case Tok::LParen: {
        take();
        Formula f = implication();
        if (peek().kind != Tok::RParen) {
          if (peek().kind == Tok::End) throw ParseError("expected ')'", peek().pos);
          unexpected();
        }
        take();
        return f;
      }
      default: unexpected();
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printing

constexpr int kArrow = 0, kDisj = 1, kConj = 2, kUnary = 3;

bool is_neg(const Formula& f) {
  return f.kind() == Kind::Implies && f.right().kind() == Kind::Bottom;
}

// ¬(¬a ∧ ¬b)
bool is_cdisj(const Formula& f) {
  if (!is_neg(f)) return false;
  const Formula& c = f.left();
  return c.kind() == Kind::And && is_neg(c.left()) && is_neg(c.right());
}

// a ⫾ ¬a
bool is_question(const Formula& f) {
  return f.kind() == Kind::IDisj && is_neg(f.right()) && f.right().left() == f.left();
}

int level(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Box:
    case Kind::BoxPlus: return kUnary;
    case Kind::And: return kConj;
    case Kind::IDisj: return is_question(f) ? kUnary : kDisj;
    case Kind::Implies:
      if (is_cdisj(f)) return kDisj;
      return is_neg(f) ? kUnary : kArrow;
  }
  return kArrow;
}

void print(const Formula& f, int min_level, std::string& out) {
  const int lv = level(f);
  const bool paren = lv < min_level;
  if (paren) out += '(';
  switch (f.kind()) {
    case Kind::Atom: out += f.name(); break;
    case Kind::Bottom: out += "_|_"; break;
    case Kind::Box:
      out += "[]";
      print(f.sub(), kUnary, out);
      break;
    case Kind::BoxPlus:
      out += "[+]";
      print(f.sub(), kUnary, out);
      break;
    case Kind::And:
      print(f.left(), kConj, out);
      out += " & ";
      print(f.right(), kUnary, out);
      break;
    case Kind::IDisj:
      if (lv == kUnary) {
        out += '?';
        print(f.left(), kUnary, out);
      } else {
        print(f.left(), kDisj, out);
        out += " \\/ ";
        print(f.right(), kConj, out);
      }
      break;
    case Kind::Implies:
      if (lv == kDisj) {
        print(f.left().left().left(), kDisj, out);
        out += " | ";
        print(f.left().right().left(), kConj, out);
      } else if (lv == kUnary) {
        out += '~';
        print(f.left(), kUnary, out);
      } else {
        print(f.left(), kDisj, out);
        out += " -> ";
        print(f.right(), kArrow, out);
      }
      break;
  }
  if (paren) out += ')';
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse_all(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, kArrow, out);
  return out;
}

// ---------------------------------------------------------------------------
// Measures

std::size_t modal_depth(const Formula& f) { return f.node()->modal_depth; }
bool is_declarative(const Formula& f) { return f.node()->declarative; }
bool is_standard_modal(const Formula& f) { return f.node()->standard_modal; }

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  std::unordered_set<const FormulaNode*> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!seen.insert(g.node()).second) return;
    if (g.kind() == Kind::Atom) {
      for (const auto& a : out)
        if (a == g.name()) return;
      out.push_back(g.name());
      return;
    }
    if (g.left().node()) walk(g.left());
    if (g.right().node()) walk(g.right());
  };
  walk(f);
  return out;
}

// ---------------------------------------------------------------------------
// Resolutions

namespace {

using ResolutionMemo = std::unordered_map<const FormulaNode*, std::vector<Formula>>;

const std::vector<Formula>& resolve(const Formula& f, const Limits& limits, ResolutionMemo& memo) {
  if (auto it = memo.find(f.node()); it != memo.end()) return it->second;
  std::vector<Formula> out;
  auto guard = [&](std::size_t n) {
    if (n > limits.max_resolutions)
      throw ResourceLimitError("resolution count exceeds limit of " +
                               std::to_string(limits.max_resolutions));
  };
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Bottom:
    case Kind::Box:
    case Kind::BoxPlus: out.push_back(f); break;
    case Kind::And: {
      const auto& rl = resolve(f.left(), limits, memo);
      const auto& rr = resolve(f.right(), limits, memo);
      guard(rl.size() * rr.size());
      for (const Formula& a : rl)
        for (const Formula& b : rr) push_unique(out, Formula::conj(a, b));
      break;
    }
    case Kind::IDisj: {
      const auto& rl = resolve(f.left(), limits, memo);
      const auto& rr = resolve(f.right(), limits, memo);
      guard(rl.size() + rr.size());
      for (const Formula& a : rl) push_unique(out, a);
      for (const Formula& b : rr) push_unique(out, b);
      break;
    }
    case Kind::Implies: {
      const auto rl = resolve(f.left(), limits, memo);
      const auto rr = resolve(f.right(), limits, memo);
      // |rr|^|rl| functions, enumerated lexicographically (first slot most significant).
      std::size_t total = 1;
      for (std::size_t i = 0; i < rl.size(); ++i) {
        total *= rr.size();
        guard(total);
      }
      std::vector<std::size_t> choice(rl.size(), 0);
      for (std::size_t n = 0; n < total; ++n) {
        std::vector<Formula> parts;
        parts.reserve(rl.size());
        for (std::size_t i = 0; i < rl.size(); ++i)
          parts.push_back(Formula::implies(rl[i], rr[choice[i]]));
        push_unique(out, Formula::conj_all(parts));
        for (std::size_t i = rl.size(); i-- > 0;) {
          if (++choice[i] < rr.size()) break;
          choice[i] = 0;
        }
      }
      break;
    }
  }
  return memo.emplace(f.node(), std::move(out)).first->second;
}

}  // namespace

std::vector<Formula> resolutions(const Formula& f, const Limits& limits) {
  ResolutionMemo memo;
  return resolve(f, limits, memo);
}

// ---------------------------------------------------------------------------
// Random generation

namespace {

Formula gen(std::mt19937_64& rng, const std::vector<std::string>& atoms,
            const RandomFormulaOptions& opt, std::size_t budget, std::size_t depth) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  if (budget == 0 || pick(4) == 0) {
    if (atoms.empty() || pick(6) == 0) return Formula::bottom();
    return Formula::atom(atoms[pick(atoms.size())]);
  }
  std::vector<int> ops = {0, 1, 1};  // ∧, →
  if (opt.allow_idisj) ops.push_back(2);
  if (depth > 0) {
    ops.push_back(3);
    if (opt.allow_boxplus) ops.push_back(4);
  }
  const int op = ops[pick(ops.size())];
  if (op >= 3) {
    Formula sub = gen(rng, atoms, opt, budget - 1, depth - 1);
    return op == 3 ? Formula::box(sub) : Formula::boxplus(sub);
  }
  const std::size_t rest = budget - 1;
  const std::size_t lb = rest == 0 ? 0 : pick(rest + 1);
  Formula l = gen(rng, atoms, opt, lb, depth);
  Formula r = gen(rng, atoms, opt, rest - lb, depth);
  switch (op) {
    case 0: return Formula::conj(l, r);
    case 1: return Formula::implies(l, r);
    default: return Formula::idisj(l, r);
  }
}

}  // namespace

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& atoms,
                       const RandomFormulaOptions& options) {
  return gen(rng, atoms, options, options.max_size, options.max_modal_depth);
}

}  // namespace inqml
