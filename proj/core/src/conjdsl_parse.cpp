#include <cctype>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "supercong/conjdsl.hpp"

namespace supercong {
namespace {

struct Token {
  enum Kind { end, ident, integer, str, punct } kind = end;
  std::string text;
  unsigned long long ival = 0;
  int line = 1, col = 1;
};

constexpr unsigned long long int_cap = 4000000000000000000ULL;

std::vector<Token> lex(std::string_view text, const std::string& file) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw parse_error(file, line, col, msg);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') { ++i; ++line; col = 1; continue; }
    if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Token::integer;
      unsigned long long v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned long long>(text[i] - '0');
        if (v > int_cap) fail("integer literal too large");
        ++i; ++col;
      }
      t.ival = v;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::ident;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        t.text += text[i];
        ++i; ++col;
      }
    } else if (c == '"') {
      t.kind = Token::str;
      ++i; ++col;
      while (i < text.size() && text[i] != '"' && text[i] != '\n') {
        t.text += text[i];
        ++i; ++col;
      }
      if (i >= text.size() || text[i] != '"') fail("unterminated string");
      ++i; ++col;
    } else if (c == '=') {
      t.kind = Token::punct;
      std::size_t n = 0;
      while (i + n < text.size() && text[i + n] == '=' && n < 3) ++n;
      t.text = std::string(n, '=');
      i += n;
      col += static_cast<int>(n);
    } else if (c == '!') {
      if (i + 1 >= text.size() || text[i + 1] != '=') fail("expected '=' after '!'");
      t.kind = Token::punct;
      t.text = "!=";
      i += 2; col += 2;
    } else if (std::string_view("(){}[],;:+-*/^").find(c) != std::string_view::npos) {
      t.kind = Token::punct;
      t.text = std::string(1, c);
      ++i; ++col;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token eof;
  eof.kind = Token::end;
  eof.line = line;
  eof.col = col;
  out.push_back(eof);
  return out;
}

// mutable while under construction; converts to ExprPtr on return
std::shared_ptr<Expr> make(ExprKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

ExprPtr make_binary(ExprKind k, ExprPtr l, ExprPtr r) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(l);
  e->rhs = std::move(r);
  return e;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view filename)
      : file_(filename), toks_(lex(text, file_)) {}

  std::vector<ConjectureSpec> parse_file() {
    std::vector<ConjectureSpec> out;
    std::set<std::string> ids;
    while (peek().kind != Token::end) {
      ConjectureSpec spec = parse_entry();
      if (!ids.insert(spec.id).second)
        fail(peek(), "duplicate entry id \"" + spec.id + "\"");
      out.push_back(std::move(spec));
    }
    return out;
  }

 private:
  std::string file_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek(int ahead = 0) const {
    std::size_t i = pos_ + static_cast<std::size_t>(ahead);
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Token::end) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw parse_error(file_, t.line, t.col, msg);
  }

  bool at_punct(std::string_view s) const {
    return peek().kind == Token::punct && peek().text == s;
  }
  bool accept_punct(std::string_view s) {
    if (!at_punct(s)) return false;
    next();
    return true;
  }
  void expect_punct(std::string_view s) {
    if (!accept_punct(s))
      fail(peek(), "expected '" + std::string(s) + "'");
  }
  bool at_ident(std::string_view s) const {
    return peek().kind == Token::ident && peek().text == s;
  }
  bool accept_ident(std::string_view s) {
    if (!at_ident(s)) return false;
    next();
    return true;
  }
  void expect_ident(std::string_view s) {
    if (!accept_ident(s))
      fail(peek(), "expected '" + std::string(s) + "'");
  }
  unsigned long long expect_uint(const char* what) {
    if (peek().kind != Token::integer) fail(peek(), std::string("expected ") + what);
    return next().ival;
  }
  long long expect_sint(const char* what) {
    bool negate = accept_punct("-");
    long long v = static_cast<long long>(expect_uint(what));
    return negate ? -v : v;
  }

  // ---- entries ----

  ConjectureSpec parse_entry() {
    ConjectureSpec spec;
    if (accept_ident("theorem")) spec.is_theorem = true;
    else if (!accept_ident("conjecture"))
      fail(peek(), "expected 'conjecture' or 'theorem'");
    if (peek().kind != Token::str) fail(peek(), "expected quoted entry id");
    spec.id = next().text;
    if (spec.id.empty()) fail(peek(), "entry id must not be empty");
    if (accept_punct("[")) {
      do {
        if (peek().kind != Token::ident) fail(peek(), "expected flag name");
        const Token& t = next();
        if (t.text == "low_confidence") spec.low_confidence = true;
        else fail(t, "unknown flag '" + t.text + "'");
      } while (accept_punct(","));
      expect_punct("]");
    }
    expect_punct("{");
    std::set<std::string> names;
    while (!accept_punct("}")) {
      if (accept_ident("exclude")) {
        do spec.excluded.push_back(expect_uint("prime"));
        while (accept_punct(","));
        expect_punct(";");
      } else if (accept_ident("define")) {
        if (peek().kind != Token::ident) fail(peek(), "expected define name");
        const Token& t = next();
        if (reserved(t.text)) fail(t, "'" + t.text + "' is reserved");
        if (!names.insert(t.text).second) fail(t, "duplicate define '" + t.text + "'");
        expect_punct("=");
        ExprPtr body = parse_expr(names, false);
        expect_punct(";");
        spec.defines.emplace_back(t.text, std::move(body));
      } else if (at_ident("case")) {
        spec.cases.push_back(parse_case(names));
      } else {
        fail(peek(), "expected 'exclude', 'define', 'case' or '}'");
      }
    }
    if (spec.cases.empty()) fail(peek(), "entry \"" + spec.id + "\" has no cases");
    for (const CaseSpec& c : spec.cases) {
      if (c.rep) continue;
      if (uses_xy(spec, *c.lhs) || uses_xy(spec, *c.rhs))
        fail(peek(), "entry \"" + spec.id +
                         "\": a case uses x or y without a 'with' clause");
    }
    return spec;
  }

  CaseSpec parse_case(const std::set<std::string>& names) {
    expect_ident("case");
    CaseSpec c;
    c.cond = parse_condition();
    if (at_ident("with")) c.rep = parse_rep();
    expect_punct(":");
    c.lhs = parse_expr(names, false);
    expect_punct("===");
    c.rhs = parse_expr(names, false);
    expect_punct("(");
    expect_ident("mod");
    expect_ident("p");
    expect_punct("^");
    const Token& et = peek();
    unsigned long long e = expect_uint("modulus exponent");
    if (e < 1 || e > 5) fail(et, "modulus exponent must be 1..5");
    c.mod_exp = static_cast<unsigned>(e);
    expect_punct(")");
    expect_punct(";");
    return c;
  }

  PrimeCondition parse_condition() {
    PrimeCondition cond;
    if (accept_ident("all")) return cond;
    cond.atoms.push_back(parse_cond_atom());
    while (accept_ident("and")) cond.atoms.push_back(parse_cond_atom());
    return cond;
  }

  CondAtom parse_cond_atom() {
    CondAtom a;
    if (accept_ident("p")) {
      if (accept_ident("mod")) {
        a.kind = CondAtom::Kind::mod_in;
        const Token& nt = peek();
        a.n = expect_uint("modulus");
        if (a.n < 2) fail(nt, "condition modulus must be at least 2");
        expect_ident("in");
        expect_punct("{");
        do {
          const Token& ct = peek();
          unsigned long long r = expect_uint("residue class");
          if (r >= a.n) fail(ct, "residue class out of range");
          a.classes.push_back(r);
        } while (accept_punct(","));
        expect_punct("}");
      } else {
        expect_punct("!=");
        a.kind = CondAtom::Kind::prime_neq;
        a.value = static_cast<long long>(expect_uint("prime"));
      }
    } else if (accept_ident("legendre")) {
      a.kind = CondAtom::Kind::legendre_is;
      expect_punct("(");
      const Token& at = peek();
      a.value = expect_sint("integer");
      if (a.value == 0) fail(at, "legendre argument must be nonzero");
      expect_punct(")");
      expect_punct("==");
      a.sign = expect_pm1();
    } else if (accept_ident("legendrep")) {
      a.kind = CondAtom::Kind::legendre_of_p;
      expect_punct("(");
      const Token& vt = peek();
      a.value = static_cast<long long>(expect_uint("odd prime"));
      if (a.value < 3 || a.value % 2 == 0) fail(vt, "legendrep needs an odd prime");
      expect_punct(")");
      expect_punct("==");
      a.sign = expect_pm1();
    } else {
      fail(peek(), "expected a condition");
    }
    return a;
  }

  int expect_pm1() {
    const Token& t = peek();
    long long v = expect_sint("1 or -1");
    if (v != 1 && v != -1) fail(t, "expected 1 or -1");
    return static_cast<int>(v);
  }

  RepClause parse_rep() {
    expect_ident("with");
    RepClause rep;
    const Token& start = peek();
    if (peek().kind == Token::integer) {
      rep.form.t = static_cast<unsigned>(expect_uint("multiplier"));
      expect_punct("*");
    }
    expect_ident("p");
    expect_punct("=");
    rep.form.alpha = parse_rep_term("x");
    expect_punct("+");
    rep.form.beta = parse_rep_term("y");
    if (rep.form.t != 1 && rep.form.t != 2 && rep.form.t != 4)
      fail(start, "form multiplier must be 1, 2 or 4");
    if (rep.form.alpha == rep.form.beta)
      fail(start, "form coefficients must differ");
    return rep;
  }

  unsigned parse_rep_term(std::string_view var) {
    unsigned coeff = 1;
    if (peek().kind == Token::integer) {
      const Token& t = peek();
      unsigned long long v = expect_uint("coefficient");
      if (v == 0 || v > 1000) fail(t, "form coefficient out of range");
      coeff = static_cast<unsigned>(v);
      expect_punct("*");
    }
    expect_ident(var);
    expect_punct("^");
    const Token& t = peek();
    if (expect_uint("exponent") != 2) fail(t, "form terms are squares");
    return coeff;
  }

  // ---- expressions ----

  static bool reserved(const std::string& s) {
    static const std::set<std::string> words = {
        "conjecture", "theorem", "exclude", "define", "case", "with", "mod",
        "in",         "and",     "all",     "p",      "x",    "y",    "k",
        "fl",         "fbinom",  "legendre", "legendrep",     "B",    "E",
        "U",          "sum",     "seq",     "cb2",    "cb3",  "cb4",  "cb6",
        "low_confidence"};
    return words.count(s) > 0 || builtin_index(s) >= 0;
  }

  ExprPtr parse_expr(const std::set<std::string>& names, bool in_sum) {
    ExprPtr e = parse_term(names, in_sum);
    while (true) {
      if (accept_punct("+")) e = make_binary(ExprKind::add, e, parse_term(names, in_sum));
      else if (accept_punct("-")) e = make_binary(ExprKind::sub, e, parse_term(names, in_sum));
      else break;
    }
    return e;
  }

  ExprPtr parse_term(const std::set<std::string>& names, bool in_sum) {
    ExprPtr e = parse_unary(names, in_sum);
    while (true) {
      if (accept_punct("*")) e = make_binary(ExprKind::mul, e, parse_unary(names, in_sum));
      else if (accept_punct("/")) e = make_binary(ExprKind::div_, e, parse_unary(names, in_sum));
      else break;
    }
    return e;
  }

  ExprPtr parse_unary(const std::set<std::string>& names, bool in_sum) {
    if (accept_punct("-")) {
      auto e = make(ExprKind::neg);
      e->lhs = parse_unary(names, in_sum);
      return ExprPtr(std::move(e));
    }
    return parse_postfix(names, in_sum);
  }

  ExprPtr parse_postfix(const std::set<std::string>& names, bool in_sum) {
    ExprPtr base = parse_atom(names, in_sum);
    if (!at_punct("^")) return base;
    next();
    int sign = accept_punct("-") ? -1 : 1;
    if (peek().kind == Token::integer) {
      auto e = make(ExprKind::pow_int);
      e->ival = sign * static_cast<long long>(expect_uint("exponent"));
      e->lhs = base;
      return e;
    }
    if (in_sum && at_ident("k")) {
      if (sign < 0) fail(peek(), "negative geometric factors are written with /");
      next();
      auto e = make(ExprKind::pow_k);
      e->lhs = base;
      return e;
    }
    if (at_ident("fl")) {
      next();
      expect_punct("(");
      FloorLin f = parse_linfrac();
      expect_punct(")");
      auto e = make(ExprKind::pow_fl);
      e->ival = sign;
      e->flin = f;
      e->lhs = base;
      return e;
    }
    if (at_punct("(")) {
      next();
      FloorLin f = parse_linfrac_body();
      expect_punct(")");
      auto e = make(ExprKind::pow_fl);
      e->ival = sign;
      e->flin = f;
      e->lhs = base;
      return e;
    }
    fail(peek(), "expected an exponent");
  }

  ExprPtr parse_atom(const std::set<std::string>& names, bool in_sum) {
    const Token& t = peek();
    if (t.kind == Token::integer) {
      auto e = make(ExprKind::number);
      e->ival = static_cast<long long>(next().ival);
      return e;
    }
    if (accept_punct("(")) {
      ExprPtr e = parse_expr(names, in_sum);
      expect_punct(")");
      return e;
    }
    if (t.kind != Token::ident) fail(t, "expected an expression");
    if (accept_ident("p")) return make(ExprKind::prime);
    if (accept_ident("x")) return make(ExprKind::var_x);
    if (accept_ident("y")) return make(ExprKind::var_y);
    if (at_ident("k")) {
      if (!in_sum) fail(t, "'k' is only valid inside a sum");
      next();
      return make(ExprKind::var_k);
    }
    if (accept_ident("fl")) {
      expect_punct("(");
      auto e = make(ExprKind::floor_lin);
      e->flin = parse_linfrac();
      expect_punct(")");
      return e;
    }
    if (accept_ident("fbinom")) {
      expect_punct("(");
      auto e = make(ExprKind::fbinom);
      e->flin = parse_linfrac();
      expect_punct(",");
      e->flin2 = parse_linfrac();
      expect_punct(")");
      return e;
    }
    if (accept_ident("legendre")) {
      expect_punct("(");
      auto e = make(ExprKind::legendre_a);
      const Token& vt = peek();
      e->ival = expect_sint("integer");
      if (e->ival == 0) fail(vt, "legendre argument must be nonzero");
      expect_punct(")");
      return e;
    }
    if (accept_ident("legendrep")) {
      expect_punct("(");
      auto e = make(ExprKind::legendre_p);
      const Token& vt = peek();
      e->ival = static_cast<long long>(expect_uint("odd prime"));
      if (e->ival < 3 || e->ival % 2 == 0) fail(vt, "legendrep needs an odd prime");
      expect_punct(")");
      return e;
    }
    if (at_ident("B") || at_ident("E") || at_ident("U")) {
      const Token& st = next();
      auto e = make(ExprKind::special);
      e->ival = st.text == "B" ? 0 : st.text == "E" ? 1 : 2;
      expect_punct("(");
      e->flin = FloorLin{};
      parse_affine(e->flin);
      expect_punct(")");
      return e;
    }
    if (at_ident("sum")) return parse_sum(names);
    if (in_sum && (at_ident("cb2") || at_ident("cb3") || at_ident("cb4") ||
                   at_ident("cb6"))) {
      const Token& bt = next();
      auto e = make(ExprKind::binom_k);
      e->ival = bt.text[2] - '0';
      expect_punct("(");
      expect_ident("k");
      expect_punct(")");
      return e;
    }
    if (in_sum && accept_ident("seq")) {
      expect_punct("(");
      const Token& nt = peek();
      if (nt.kind != Token::ident) fail(nt, "expected a sequence name");
      std::optional<Seq> s = seq_from_name(next().text);
      if (!s) fail(nt, "unknown sequence '" + nt.text + "'");
      expect_punct(")");
      auto e = make(ExprKind::seq_k);
      e->ival = static_cast<int>(*s);
      return e;
    }
    if (builtin_index(t.text) >= 0) {
      auto e = make(ExprKind::builtin);
      e->ival = builtin_index(next().text);
      return e;
    }
    if (!reserved(t.text)) {
      if (in_sum) fail(t, "named expressions cannot appear inside sums");
      if (!names.count(t.text)) fail(t, "unknown name '" + t.text + "'");
      auto e = make(ExprKind::ident);
      e->name = next().text;
      return e;
    }
    fail(t, "'" + t.text + "' is not valid here");
  }

  // ---- floor-linear fragments ----

  FloorLin parse_linfrac() {
    FloorLin f;
    if (accept_punct("(")) {
      parse_affine(f);
      expect_punct(")");
    } else {
      parse_affine(f);
    }
    if (accept_punct("/")) {
      const Token& t = peek();
      unsigned long long c = expect_uint("denominator");
      if (c == 0) fail(t, "denominator must be positive");
      f.c = static_cast<long long>(c);
    }
    return f;
  }

  // variant for when the opening '(' was already consumed, so that
  // "^(p-1)" and "^((p-1)/2)" both work
  FloorLin parse_linfrac_body() {
    FloorLin f;
    if (accept_punct("(")) {
      parse_affine(f);
      expect_punct(")");
    } else {
      parse_affine(f);
    }
    if (accept_punct("/")) {
      const Token& t = peek();
      unsigned long long c = expect_uint("denominator");
      if (c == 0) fail(t, "denominator must be positive");
      f.c = static_cast<long long>(c);
    }
    return f;
  }

  void parse_affine(FloorLin& f) {
    parse_aterm(f, accept_punct("-") ? -1 : 1);
    while (true) {
      if (accept_punct("+")) parse_aterm(f, 1);
      else if (accept_punct("-")) parse_aterm(f, -1);
      else break;
    }
  }

  void parse_aterm(FloorLin& f, int sign) {
    if (accept_ident("p")) {
      f.a += sign;
      return;
    }
    long long v = static_cast<long long>(expect_uint("integer"));
    if (accept_punct("*")) {
      expect_ident("p");
      f.a += sign * v;
    } else {
      f.b += sign * v;
    }
  }

  // ---- sums ----

  ExprPtr parse_sum(const std::set<std::string>& names) {
    const Token& sum_tok = peek();
    expect_ident("sum");
    expect_punct("(");
    expect_ident("k");
    expect_punct(",");
    const Token& lo = peek();
    if (expect_uint("lower bound") != 0) fail(lo, "sums start at k = 0");
    expect_punct(",");
    FloorLin lim = parse_linfrac();
    SumLimit limit;
    if (lim == FloorLin{1, -1, 1}) limit = SumLimit::full;
    else if (lim == FloorLin{1, -1, 2}) limit = SumLimit::half;
    else fail(sum_tok, "sum limit must be p-1 or (p-1)/2");
    expect_punct(",");
    ExprPtr body = parse_expr(names, true);
    expect_punct(")");
    auto e = make(ExprKind::sum_node);
    e->sum = normalize_sum(sum_tok, *body, limit);
    return e;
  }

  // Polynomial in k as a coefficient vector, or nullopt when the subtree is
  // not a pure polynomial.
  std::optional<std::vector<long long>> try_poly(const Expr& e) {
    auto mul_polys = [this](const std::vector<long long>& a,
                            const std::vector<long long>& b) {
      std::vector<long long> r(a.size() + b.size() - 1, 0);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
          __int128 v = static_cast<__int128>(r[i + j]) +
                       static_cast<__int128>(a[i]) * b[j];
          if (v > static_cast<__int128>(int_cap) ||
              v < -static_cast<__int128>(int_cap))
            throw parse_error(file_, 0, 0, "sum weight coefficients overflow");
          r[i + j] = static_cast<long long>(v);
        }
      return r;
    };
    switch (e.kind) {
      case ExprKind::number:
        return std::vector<long long>{e.ival};
      case ExprKind::var_k:
        return std::vector<long long>{0, 1};
      case ExprKind::neg: {
        auto c = try_poly(*e.lhs);
        if (!c) return std::nullopt;
        for (long long& v : *c) v = -v;
        return c;
      }
      case ExprKind::add:
      case ExprKind::sub: {
        auto a = try_poly(*e.lhs);
        auto b = try_poly(*e.rhs);
        if (!a || !b) return std::nullopt;
        if (a->size() < b->size()) a->resize(b->size(), 0);
        for (std::size_t i = 0; i < b->size(); ++i)
          (*a)[i] += e.kind == ExprKind::add ? (*b)[i] : -(*b)[i];
        return a;
      }
      case ExprKind::mul: {
        auto a = try_poly(*e.lhs);
        auto b = try_poly(*e.rhs);
        if (!a || !b) return std::nullopt;
        return mul_polys(*a, *b);
      }
      case ExprKind::pow_int: {
        if (e.ival < 0 || e.ival > 12) return std::nullopt;
        auto a = try_poly(*e.lhs);
        if (!a) return std::nullopt;
        std::vector<long long> r{1};
        for (long long i = 0; i < e.ival; ++i) r = mul_polys(r, *a);
        return r;
      }
      default:
        return std::nullopt;
    }
  }

  struct SumAcc {
    std::vector<long long> poly{1};
    unsigned n[4] = {0, 0, 0, 0};
    std::optional<Seq> seq;
    long long bn = 1, bd = 1;
    DenomKind denom = DenomKind::none;
    unsigned denom_exp = 0;
  };

  void acc_poly(const Token& at, SumAcc& acc, const std::vector<long long>& q) {
    std::vector<long long> r(acc.poly.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < acc.poly.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) {
        __int128 v = static_cast<__int128>(r[i + j]) +
                     static_cast<__int128>(acc.poly[i]) * q[j];
        if (v > static_cast<__int128>(int_cap) ||
            v < -static_cast<__int128>(int_cap))
          fail(at, "sum weight coefficients overflow");
        r[i + j] = static_cast<long long>(v);
      }
    acc.poly = std::move(r);
  }

  void acc_denom(const Token& at, SumAcc& acc, const std::vector<long long>& q,
                 unsigned exp) {
    DenomKind kind;
    if (q == std::vector<long long>{1, 1}) kind = DenomKind::k_plus_1;
    else if (q == std::vector<long long>{-1, 2}) kind = DenomKind::two_k_minus_1;
    else fail(at, "only (k+1) and (2*k-1) denominators are supported");
    if (acc.denom != DenomKind::none && acc.denom != kind)
      fail(at, "mixed polynomial denominators are not supported");
    acc.denom = kind;
    acc.denom_exp += exp;
    if (acc.denom_exp > 3) fail(at, "denominator exponent must be 1..3");
  }

  void walk_sum(const Token& at, SumAcc& acc, const Expr& e, bool inverted) {
    switch (e.kind) {
      case ExprKind::mul:
        walk_sum(at, acc, *e.lhs, inverted);
        walk_sum(at, acc, *e.rhs, inverted);
        return;
      case ExprKind::div_:
        walk_sum(at, acc, *e.lhs, inverted);
        walk_sum(at, acc, *e.rhs, !inverted);
        return;
      case ExprKind::neg:
        for (long long& v : acc.poly) v = -v;
        walk_sum(at, acc, *e.lhs, inverted);
        return;
      case ExprKind::pow_k: {
        auto c = try_poly(*e.lhs);
        if (!c || c->size() != 1) fail(at, "geometric bases must be constants");
        long long m = (*c)[0];
        if (m == 0) fail(at, "geometric base must be nonzero");
        __int128 v = static_cast<__int128>(inverted ? acc.bd : acc.bn) * m;
        if (v > static_cast<__int128>(int_cap) || v < -static_cast<__int128>(int_cap))
          fail(at, "geometric base overflows");
        (inverted ? acc.bd : acc.bn) = static_cast<long long>(v);
        return;
      }
      case ExprKind::binom_k: {
        if (inverted) fail(at, "binomial factors cannot be inverted");
        int idx = e.ival == 2 ? 0 : e.ival == 3 ? 1 : e.ival == 4 ? 2 : 3;
        acc.n[idx] += 1;
        if (acc.n[idx] > 6) fail(at, "binomial exponent must be 1..6");
        return;
      }
      case ExprKind::seq_k:
        if (inverted) fail(at, "sequence factors cannot be in denominators");
        if (acc.seq) fail(at, "at most one sequence factor per sum");
        acc.seq = static_cast<Seq>(e.ival);
        return;
      case ExprKind::pow_int: {
        if (e.lhs->kind == ExprKind::binom_k) {
          if (inverted) fail(at, "binomial factors cannot be inverted");
          if (e.ival < 1 || e.ival > 6) fail(at, "binomial exponent must be 1..6");
          int fam = e.lhs->ival;
          int idx = fam == 2 ? 0 : fam == 3 ? 1 : fam == 4 ? 2 : 3;
          acc.n[idx] += static_cast<unsigned>(e.ival);
          if (acc.n[idx] > 6) fail(at, "binomial exponent must be 1..6");
          return;
        }
        if (e.ival < 1) fail(at, "negative exponents in sum terms are written with /");
        auto c = try_poly(*e.lhs);
        if (!c) fail(at, "unsupported factor inside a sum");
        if (inverted) {
          acc_denom(at, acc, *c, static_cast<unsigned>(e.ival));
        } else {
          auto full = try_poly(e);
          if (!full) fail(at, "unsupported factor inside a sum");
          acc_poly(at, acc, *full);
        }
        return;
      }
      default: {
        auto c = try_poly(e);
        if (!c) fail(at, "unsupported factor inside a sum");
        if (inverted) {
          if (c->size() == 1)
            fail(at, "constant denominators belong outside the sum");
          acc_denom(at, acc, *c, 1);
        } else {
          acc_poly(at, acc, *c);
        }
        return;
      }
    }
  }

  SumSpec normalize_sum(const Token& at, const Expr& body, SumLimit limit) {
    SumAcc acc;
    walk_sum(at, acc, body, false);
    while (acc.poly.size() > 1 && acc.poly.back() == 0) acc.poly.pop_back();
    if (acc.bd < 0) {
      acc.bd = -acc.bd;
      acc.bn = -acc.bn;
    }
    long long g = std::gcd(acc.bn < 0 ? -acc.bn : acc.bn, acc.bd);
    if (g > 1) {
      acc.bn /= g;
      acc.bd /= g;
    }
    SumSpec s;
    s.weight.c = std::move(acc.poly);
    s.n2 = acc.n[0];
    s.n3 = acc.n[1];
    s.n4 = acc.n[2];
    s.n6 = acc.n[3];
    s.seq = acc.seq;
    s.base_num = acc.bn;
    s.base_den = acc.bd;
    s.denom = acc.denom_exp == 0 ? DenomKind::none : acc.denom;
    s.denom_exp = acc.denom_exp;
    s.limit = limit;
    return s;
  }

  // ---- semantic scan for unbound x/y ----

  bool uses_xy(const ConjectureSpec& spec, const Expr& e) const {
    switch (e.kind) {
      case ExprKind::var_x:
      case ExprKind::var_y:
        return true;
      case ExprKind::ident:
        for (const auto& [name, body] : spec.defines)
          if (name == e.name) return uses_xy(spec, *body);
        return false;
      default:
        if (e.lhs && uses_xy(spec, *e.lhs)) return true;
        if (e.rhs && uses_xy(spec, *e.rhs)) return true;
        return false;
    }
  }
};

}  // namespace

std::vector<ConjectureSpec> parse_registry(std::string_view text,
                                           std::string_view filename) {
  Parser p(text, filename);
  return p.parse_file();
}

}  // namespace supercong
