#include "smsafe/text_io.hpp"

#include <algorithm>
#include <cctype>

namespace smsafe {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column) {}

namespace {

enum class Tok {
  End,
  Var,
  Lower,
  Not,
  Forall,
  Exists,
  True,
  False,
  LParen,
  RParen,
  Comma,
  And,
  Or,
  Implies,
  Iff,
  Eq,
  Neq,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.text = std::string(src.substr(i, j - i));
      if (t.text == "not") {
        t.kind = Tok::Not;
      } else if (t.text == "forall") {
        t.kind = Tok::Forall;
      } else if (t.text == "exists") {
        t.kind = Tok::Exists;
      } else if (t.text == "true") {
        t.kind = Tok::True;
      } else if (t.text == "false") {
        t.kind = Tok::False;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        t.kind = Tok::Var;
      } else if (std::islower(static_cast<unsigned char>(c))) {
        t.kind = Tok::Lower;
      } else {
        throw ParseError("identifier must start with a letter: '" + t.text + "'", line, col);
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };
    if (starts("<->")) {
      t.kind = Tok::Iff;
      t.text = "<->";
    } else if (starts("->")) {
      t.kind = Tok::Implies;
      t.text = "->";
    } else if (starts("!=")) {
      t.kind = Tok::Neq;
      t.text = "!=";
    } else if (c == '=') {
      t.kind = Tok::Eq;
      t.text = "=";
    } else if (c == '&') {
      t.kind = Tok::And;
      t.text = "&";
    } else if (c == '|') {
      t.kind = Tok::Or;
      t.text = "|";
    } else if (c == '(') {
      t.kind = Tok::LParen;
      t.text = "(";
    } else if (c == ')') {
      t.kind = Tok::RParen;
      t.text = ")";
    } else if (c == ',') {
      t.kind = Tok::Comma;
      t.text = ",";
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("expected end of input, found " + describe(peek()));
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found " + describe(peek()));
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula l = impl();
    while (accept(Tok::Iff)) l = Formula::iff(l, impl());
    return l;
  }

  Formula impl() {
    Formula l = disj();
    if (accept(Tok::Implies)) return Formula::implies(l, impl());
    return l;
  }

  Formula disj() {
    Formula l = conj();
    while (accept(Tok::Or)) l = Formula::disj(l, conj());
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (accept(Tok::And)) l = Formula::conj(l, unary());
    return l;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::neg(unary());
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      const Connective q = take().kind == Tok::Forall ? Connective::Forall : Connective::Exists;
      std::vector<std::string> vars;
      while (peek().kind == Tok::Var) vars.push_back(take().text);
      if (vars.empty()) fail("expected a variable after quantifier, found " + describe(peek()));
      Formula body = unary();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::quantified(q, *it, body);
      return body;
    }
    return primary();
  }

  Term term() {
    const Token& t = peek();
    if (t.kind == Tok::Var) return Term::variable(take().text);
    if (t.kind == Tok::Lower) return Term::constant(take().text);
    fail("expected a term, found " + describe(t));
  }

  Formula equality(Term lhs) {
    if (accept(Tok::Eq)) return Formula::equals(std::move(lhs), term());
    if (accept(Tok::Neq)) return Formula::neg(Formula::equals(std::move(lhs), term()));
    fail("expected '=' or '!=', found " + describe(peek()));
  }

  Formula primary() {
    switch (peek().kind) {
      case Tok::False:
        take();
        return Formula::bot();
      case Tok::True:
        take();
        return Formula::top();
      case Tok::LParen: {
        take();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Var:
        return equality(term());
      case Tok::Lower: {
        if (peek(1).kind == Tok::Eq || peek(1).kind == Tok::Neq) return equality(term());
        std::string pred = take().text;
        std::vector<Term> args;
        if (accept(Tok::LParen)) {
          args.push_back(term());
          while (accept(Tok::Comma)) args.push_back(term());
          expect(Tok::RParen, "')'");
        }
        return Formula::atom(std::move(pred), std::move(args));
      }
      default:
        fail("expected a formula, found " + describe(peek()));
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text, ParseMode mode) {
  auto tokens = lex(text);
  const Token end = tokens.back();
  Formula f = Parser(std::move(tokens)).parse_all();
  if (mode == ParseMode::Sentence) {
    const auto free = free_variables(f);
    if (!free.empty()) {
      throw ParseError("free variable '" + *free.begin() + "' in a sentence", end.line, end.column);
    }
  }
  signature_of(f);  // arity check
  return normalize_bound_variables(f);
}

namespace {

enum Level : int { kIff = 1, kImpl = 2, kDisj = 3, kConj = 4, kUnary = 5 };

std::string term_text(const Term& t) { return t.name; }

bool is_iff(const Formula& f) {
  if (f.kind() != Connective::And) return false;
  const Formula l = f.left();
  const Formula r = f.right();
  return l.kind() == Connective::Implies && r.kind() == Connective::Implies && !l.is_top() &&
         l.left() == r.right() && l.right() == r.left();
}

int level_of(const Formula& f) {
  switch (f.kind()) {
    case Connective::And:
      return is_iff(f) ? kIff : kConj;
    case Connective::Or:
      return kDisj;
    case Connective::Implies:
      return f.is_top() || f.is_negation() ? kUnary : kImpl;
    default:
      return kUnary;
  }
}

std::string render(const Formula& f, int min_level);

std::string render_node(const Formula& f) {
  switch (f.kind()) {
    case Connective::Bot:
      return "false";
    case Connective::Pred: {
      std::string s = f.name();
      if (!f.terms().empty()) {
        s += '(';
        for (std::size_t i = 0; i < f.terms().size(); ++i) {
          if (i) s += ", ";
          s += term_text(f.terms()[i]);
        }
        s += ')';
      }
      return s;
    }
    case Connective::Eq:
      return term_text(f.terms()[0]) + " = " + term_text(f.terms()[1]);
    case Connective::And:
      if (is_iff(f)) return render(f.left().left(), kIff) + " <-> " + render(f.left().right(), kImpl);
      return render(f.left(), kConj) + " & " + render(f.right(), kUnary);
    case Connective::Or:
      return render(f.left(), kDisj) + " | " + render(f.right(), kConj);
    case Connective::Implies:
      if (f.is_top()) return "true";
      if (f.is_negation()) {
        const Formula inner = f.left();
        if (inner.kind() == Connective::Eq) {
          return term_text(inner.terms()[0]) + " != " + term_text(inner.terms()[1]);
        }
        return "not " + render(inner, kUnary);
      }
      return render(f.left(), kDisj) + " -> " + render(f.right(), kImpl);
    case Connective::Forall:
    case Connective::Exists: {
      std::string s = f.kind() == Connective::Forall ? "forall" : "exists";
      Formula cur = f;
      while (cur.kind() == f.kind()) {
        s += ' ' + cur.name();
        cur = cur.body();
      }
      if (cur.is_quantifier()) return s + ' ' + render(cur, 0);
      return s + " (" + render(cur, 0) + ")";
    }
  }
  return {};
}

std::string render(const Formula& f, int min_level) {
  std::string s = render_node(f);
  if (level_of(f) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print(const Formula& f) { return render(normalize_bound_variables(f), 0); }

nlohmann::json to_json(const Interpretation& i) {
  nlohmann::json j;
  std::vector<Element> universe = i.universe;
  std::sort(universe.begin(), universe.end());
  j["universe"] = universe;
  j["constants"] = nlohmann::json::object();
  for (const auto& [c, e] : i.constants) j["constants"][c] = e;
  j["predicates"] = nlohmann::json::object();
  for (const auto& [p, tuples] : i.predicates) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tuples) arr.push_back(t);  // std::set keeps lexicographic order
    j["predicates"][p] = std::move(arr);
  }
  return j;
}

Interpretation interpretation_from_json(const nlohmann::json& j) {
  Interpretation i;
  try {
    i.universe = j.at("universe").get<std::vector<Element>>();
    for (const auto& [c, e] : j.at("constants").items()) i.constants[c] = e.get<Element>();
    for (const auto& [p, arr] : j.at("predicates").items()) {
      auto& ext = i.predicates[p];
      for (const auto& t : arr) ext.insert(t.get<ElementTuple>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed interpretation JSON: ") + e.what());
  }
  return i;
}

nlohmann::json to_json(const PredicateValuation& u) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [p, tuples] : u.relations) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : tuples) arr.push_back(t);
    j[p] = std::move(arr);
  }
  return j;
}

PredicateValuation valuation_from_json(const nlohmann::json& j) {
  PredicateValuation u;
  try {
    for (const auto& [p, arr] : j.items()) {
      auto& ext = u.relations[p];
      for (const auto& t : arr) ext.insert(t.get<ElementTuple>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed valuation JSON: ") + e.what());
  }
  return u;
}

nlohmann::json to_json(const Signature& sig) {
  nlohmann::json j;
  j["constants"] = sig.constants;
  j["predicates"] = nlohmann::json::object();
  for (const auto& [p, arity] : sig.predicates) j["predicates"][p] = arity;
  return j;
}

std::string serialize_models(std::span<const Interpretation> models) {
  std::vector<std::string> dumped;
  dumped.reserve(models.size());
  for (const auto& m : models) dumped.push_back(to_json(m).dump());
  std::sort(dumped.begin(), dumped.end());
  std::string out = "[";
  for (std::size_t k = 0; k < dumped.size(); ++k) {
    if (k) out += ',';
    out += dumped[k];
  }
  return out + "]";
}

}  // namespace smsafe
