#include "supercong/conjdsl.hpp"

#include <string>

namespace supercong {

int builtin_index(std::string_view name) {
  for (int i = 0; i < builtin_count; ++i)
    if (builtin_names[i] == name) return i;
  return -1;
}

std::string_view outcome_name(VerificationRecord::Outcome o) {
  switch (o) {
    case VerificationRecord::Outcome::pass: return "pass";
    case VerificationRecord::Outcome::fail: return "fail";
    case VerificationRecord::Outcome::skipped: return "skipped";
    case VerificationRecord::Outcome::error: return "error";
  }
  return "?";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  auto both = [&](const ExprPtr& x, const ExprPtr& y) {
    if (!x != !y) return false;
    return !x || expr_equal(*x, *y);
  };
  switch (a.kind) {
    case ExprKind::number:
    case ExprKind::pow_int:
    case ExprKind::legendre_a:
    case ExprKind::legendre_p:
    case ExprKind::builtin:
      if (a.ival != b.ival) break;
      return both(a.lhs, b.lhs);
    case ExprKind::prime:
    case ExprKind::var_x:
    case ExprKind::var_y:
      return true;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div_:
    case ExprKind::neg:
      return both(a.lhs, b.lhs) && both(a.rhs, b.rhs);
    case ExprKind::pow_fl:
      return a.ival == b.ival && a.flin == b.flin && both(a.lhs, b.lhs);
    case ExprKind::floor_lin:
      return a.flin == b.flin;
    case ExprKind::fbinom:
      return a.flin == b.flin && a.flin2 == b.flin2;
    case ExprKind::special:
      return a.ival == b.ival && a.flin == b.flin;
    case ExprKind::sum_node:
      return a.sum == b.sum;
    case ExprKind::ident:
      return a.name == b.name;
    case ExprKind::var_k:
      return true;
    case ExprKind::pow_k:
      return both(a.lhs, b.lhs);
    case ExprKind::binom_k:
    case ExprKind::seq_k:
      return a.ival == b.ival;
  }
  return false;
}

bool spec_equal(const ConjectureSpec& a, const ConjectureSpec& b) {
  if (a.id != b.id || a.is_theorem != b.is_theorem ||
      a.low_confidence != b.low_confidence || a.excluded != b.excluded)
    return false;
  if (a.defines.size() != b.defines.size() || a.cases.size() != b.cases.size())
    return false;
  for (std::size_t i = 0; i < a.defines.size(); ++i) {
    if (a.defines[i].first != b.defines[i].first) return false;
    if (!expr_equal(*a.defines[i].second, *b.defines[i].second)) return false;
  }
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    const CaseSpec& x = a.cases[i];
    const CaseSpec& y = b.cases[i];
    if (!(x.cond == y.cond) || x.rep != y.rep || x.mod_exp != y.mod_exp)
      return false;
    if (!expr_equal(*x.lhs, *y.lhs) || !expr_equal(*x.rhs, *y.rhs))
      return false;
  }
  return true;
}

namespace {

// Compact form of a*p + b used inside fl(), fbinom(), B/E/U() and exponents.
std::string affine_str(long long a, long long b) {
  std::string s;
  if (a == 1) s = "p";
  else if (a == -1) s = "-p";
  else if (a != 0) s = std::to_string(a) + "*p";
  if (a == 0) return std::to_string(b);
  if (b > 0) s += "+" + std::to_string(b);
  if (b < 0) s += "-" + std::to_string(-b);
  return s;
}

bool affine_multi(long long a, long long b) { return a != 0 && b != 0; }

// (a*p + b)/c as a linfrac argument.
std::string linfrac_str(const FloorLin& f) {
  std::string body = affine_str(f.a, f.b);
  if (f.c == 1) return body;
  if (affine_multi(f.a, f.b) || body[0] == '-') body = "(" + body + ")";
  return body + "/" + std::to_string(f.c);
}

// Polynomial in k, compact, ascending powers.
std::string kpoly_str(const std::vector<long long>& c) {
  std::string s;
  int terms = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    long long v = c[i];
    if (terms == 0) {
      if (v < 0) { s += "-"; v = -v; }
    } else {
      s += v < 0 ? "-" : "+";
      if (v < 0) v = -v;
    }
    if (i == 0) s += std::to_string(v);
    else {
      if (v != 1) s += std::to_string(v) + "*";
      s += "k";
      if (i > 1) s += "^" + std::to_string(i);
    }
    ++terms;
  }
  if (terms == 0) return "0";
  return terms > 1 ? "(" + s + ")" : s;
}

std::string sum_str(const SumSpec& s) {
  std::string term;
  auto factor = [&](const std::string& f) {
    if (!term.empty()) term += "*";
    term += f;
  };
  bool w1 = s.weight.c.size() == 1 && s.weight.c[0] == 1;
  if (!w1) factor(kpoly_str(s.weight.c));
  const std::pair<unsigned, const char*> fams[] = {
      {s.n2, "cb2(k)"}, {s.n3, "cb3(k)"}, {s.n4, "cb4(k)"}, {s.n6, "cb6(k)"}};
  for (auto [n, name] : fams) {
    if (n == 0) continue;
    factor(n == 1 ? std::string(name)
                  : std::string(name) + "^" + std::to_string(n));
  }
  if (s.seq) factor("seq(" + std::string(seq_name(*s.seq)) + ")");
  if (s.base_num != 1) {
    std::string b = std::to_string(s.base_num);
    if (s.base_num < 0) b = "(" + b + ")";
    factor(b + "^k");
  }
  if (term.empty()) term = "1";
  if (s.base_den != 1) term += "/" + std::to_string(s.base_den) + "^k";
  if (s.denom != DenomKind::none) {
    term += s.denom == DenomKind::k_plus_1 ? "/(k+1)" : "/(2*k-1)";
    if (s.denom_exp > 1) term += "^" + std::to_string(s.denom_exp);
  }
  const char* limit = s.limit == SumLimit::full ? "p-1" : "(p-1)/2";
  return "sum(k, 0, " + std::string(limit) + ", " + term + ")";
}

// Precedence: additive 1, multiplicative 2, unary minus 3, power 4, atoms 5.
int prec(ExprKind k) {
  switch (k) {
    case ExprKind::add:
    case ExprKind::sub: return 1;
    case ExprKind::mul:
    case ExprKind::div_: return 2;
    case ExprKind::neg: return 3;
    case ExprKind::pow_int:
    case ExprKind::pow_fl: return 4;
    default: return 5;
  }
}

void pr(std::string& out, const Expr& e, int ctx) {
  int me = prec(e.kind);
  if (me < ctx) out += "(";
  switch (e.kind) {
    case ExprKind::number: out += std::to_string(e.ival); break;
    case ExprKind::prime: out += "p"; break;
    case ExprKind::var_x: out += "x"; break;
    case ExprKind::var_y: out += "y"; break;
    case ExprKind::add:
      pr(out, *e.lhs, me);
      out += " + ";
      pr(out, *e.rhs, me + 1);
      break;
    case ExprKind::sub:
      pr(out, *e.lhs, me);
      out += " - ";
      pr(out, *e.rhs, me + 1);
      break;
    case ExprKind::mul:
      pr(out, *e.lhs, me);
      out += "*";
      pr(out, *e.rhs, me + 1);
      break;
    case ExprKind::div_:
      pr(out, *e.lhs, me);
      out += "/";
      pr(out, *e.rhs, me + 1);
      break;
    case ExprKind::neg:
      out += "-";
      pr(out, *e.lhs, me);
      break;
    case ExprKind::pow_int:
      pr(out, *e.lhs, 5);
      out += "^" + std::to_string(e.ival);
      break;
    case ExprKind::pow_fl: {
      pr(out, *e.lhs, 5);
      out += "^";
      if (e.ival < 0) out += "-";
      if (e.flin.c == 1) out += "(" + affine_str(e.flin.a, e.flin.b) + ")";
      else out += "fl(" + linfrac_str(e.flin) + ")";
      break;
    }
    case ExprKind::legendre_a:
      out += "legendre(" + std::to_string(e.ival) + ")";
      break;
    case ExprKind::legendre_p:
      out += "legendrep(" + std::to_string(e.ival) + ")";
      break;
    case ExprKind::floor_lin:
      out += "fl(" + linfrac_str(e.flin) + ")";
      break;
    case ExprKind::fbinom:
      out += "fbinom(" + linfrac_str(e.flin) + ", " + linfrac_str(e.flin2) + ")";
      break;
    case ExprKind::special: {
      const char* names[] = {"B", "E", "U"};
      out += names[e.ival];
      out += "(" + affine_str(e.flin.a, e.flin.b) + ")";
      break;
    }
    case ExprKind::builtin:
      out += builtin_names[e.ival];
      break;
    case ExprKind::sum_node:
      out += sum_str(e.sum);
      break;
    case ExprKind::ident:
      out += e.name;
      break;
    case ExprKind::var_k:
      out += "k";
      break;
    case ExprKind::pow_k:
      pr(out, *e.lhs, 5);
      out += "^k";
      break;
    case ExprKind::binom_k:
      out += "cb" + std::to_string(e.ival) + "(k)";
      break;
    case ExprKind::seq_k:
      out += "seq(" + std::string(seq_name(static_cast<Seq>(e.ival))) + ")";
      break;
  }
  if (me < ctx) out += ")";
}

std::string cond_str(const PrimeCondition& cond) {
  if (cond.atoms.empty()) return "all";
  std::string s;
  for (const CondAtom& a : cond.atoms) {
    if (!s.empty()) s += " and ";
    switch (a.kind) {
      case CondAtom::Kind::always:
        s += "all";
        break;
      case CondAtom::Kind::mod_in: {
        s += "p mod " + std::to_string(a.n) + " in {";
        for (std::size_t i = 0; i < a.classes.size(); ++i) {
          if (i) s += ", ";
          s += std::to_string(a.classes[i]);
        }
        s += "}";
        break;
      }
      case CondAtom::Kind::legendre_is:
        s += "legendre(" + std::to_string(a.value) +
             ") == " + std::to_string(a.sign);
        break;
      case CondAtom::Kind::legendre_of_p:
        s += "legendrep(" + std::to_string(a.value) +
             ") == " + std::to_string(a.sign);
        break;
      case CondAtom::Kind::prime_neq:
        s += "p != " + std::to_string(a.value);
        break;
    }
  }
  return s;
}

std::string rep_str(const RepClause& rep) {
  std::string s = "with ";
  if (rep.form.t != 1) s += std::to_string(rep.form.t) + "*";
  s += "p = ";
  if (rep.form.alpha != 1) s += std::to_string(rep.form.alpha) + "*";
  s += "x^2 + ";
  if (rep.form.beta != 1) s += std::to_string(rep.form.beta) + "*";
  s += "y^2";
  return s;
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  pr(out, e, 0);
  return out;
}

std::string print_conjecture(const ConjectureSpec& spec) {
  std::string out = spec.is_theorem ? "theorem" : "conjecture";
  out += " \"" + spec.id + "\"";
  if (spec.low_confidence) out += " [low_confidence]";
  out += " {\n";
  if (!spec.excluded.empty()) {
    out += "  exclude ";
    for (std::size_t i = 0; i < spec.excluded.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(spec.excluded[i]);
    }
    out += ";\n";
  }
  for (const auto& [name, body] : spec.defines)
    out += "  define " + name + " = " + print_expr(*body) + ";\n";
  for (const CaseSpec& c : spec.cases) {
    out += "  case " + cond_str(c.cond);
    if (c.rep) out += " " + rep_str(*c.rep);
    out += ":\n    " + print_expr(*c.lhs) + " === " + print_expr(*c.rhs) +
           "  (mod p^" + std::to_string(c.mod_exp) + ");\n";
  }
  out += "}\n";
  return out;
}

std::string print_registry(std::span<const ConjectureSpec> specs) {
  std::string out;
  for (const ConjectureSpec& s : specs) {
    if (!out.empty()) out += "\n";
    out += print_conjecture(s);
  }
  return out;
}

}  // namespace supercong
