#include <string>
#include <utility>

#include "supercong/conjdsl.hpp"

namespace supercong {
namespace {

bool is_constant(const Expr& e) {
  switch (e.kind) {
    case ExprKind::number:
      return true;
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div_:
      return is_constant(*e.lhs) && is_constant(*e.rhs);
    case ExprKind::neg:
    case ExprKind::pow_int:
      return is_constant(*e.lhs);
    default:
      return false;
  }
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Exact rational with denominator > 0, reduced after every step.
struct Rat {
  __int128 n = 0;
  __int128 d = 1;
};

constexpr __int128 rat_cap = static_cast<__int128>(1) << 62;

Rat rat_norm(Rat r) {
  if (r.d == 0) throw math_error(errc::divide_by_zero, "constant division by zero");
  if (r.d < 0) { r.n = -r.n; r.d = -r.d; }
  __int128 g = gcd128(r.n, r.d);
  if (g > 1) { r.n /= g; r.d /= g; }
  if (r.n > rat_cap || r.n < -rat_cap || r.d > rat_cap)
    throw math_error(errc::unsupported, "constant overflows");
  return r;
}

Rat fold_constant(const Expr& e) {
  switch (e.kind) {
    case ExprKind::number:
      return Rat{e.ival, 1};
    case ExprKind::add: {
      Rat a = fold_constant(*e.lhs), b = fold_constant(*e.rhs);
      return rat_norm(Rat{a.n * b.d + b.n * a.d, a.d * b.d});
    }
    case ExprKind::sub: {
      Rat a = fold_constant(*e.lhs), b = fold_constant(*e.rhs);
      return rat_norm(Rat{a.n * b.d - b.n * a.d, a.d * b.d});
    }
    case ExprKind::mul: {
      Rat a = fold_constant(*e.lhs), b = fold_constant(*e.rhs);
      return rat_norm(Rat{a.n * b.n, a.d * b.d});
    }
    case ExprKind::div_: {
      Rat a = fold_constant(*e.lhs), b = fold_constant(*e.rhs);
      return rat_norm(Rat{a.n * b.d, a.d * b.n});
    }
    case ExprKind::neg: {
      Rat a = fold_constant(*e.lhs);
      return Rat{-a.n, a.d};
    }
    case ExprKind::pow_int: {
      Rat a = fold_constant(*e.lhs);
      long long n = e.ival;
      if (n < 0) {
        std::swap(a.n, a.d);
        a = rat_norm(a);
        n = -n;
      }
      Rat r{1, 1};
      for (long long i = 0; i < n; ++i) r = rat_norm(Rat{r.n * a.n, r.d * a.d});
      return r;
    }
    default:
      throw math_error(errc::unsupported, "not a constant expression");
  }
}

Residue rat_residue(const Modulus& mod, Rat r) {
  // reduced form fits in long long by rat_cap
  return res_from_rational(mod, static_cast<long long>(r.n),
                           static_cast<long long>(r.d));
}

Residue eval_builtin(EvalContext& ctx, int idx);

}  // namespace

const std::vector<Residue>& EvalContext::seq_values(Seq s) {
  auto [it, inserted] = seq_cache.try_emplace(static_cast<int>(s));
  if (inserted)
    it->second = seq_by_recurrence(mod, s, static_cast<std::size_t>(mod.p));
  return it->second;
}

Residue eval_expr(EvalContext& ctx, const Expr& e) {
  const Modulus& mod = ctx.mod;
  switch (e.kind) {
    case ExprKind::number:
      return res_from_int(mod, e.ival);
    case ExprKind::prime:
      return res_from_uint(mod, mod.p);
    case ExprKind::var_x:
      if (!ctx.rep) throw math_error(errc::unsupported, "x is not bound");
      return res_from_uint(mod, ctx.rep->x);
    case ExprKind::var_y:
      if (!ctx.rep) throw math_error(errc::unsupported, "y is not bound");
      return res_from_uint(mod, ctx.rep->y);
    case ExprKind::add:
      return res_add(mod, eval_expr(ctx, *e.lhs), eval_expr(ctx, *e.rhs));
    case ExprKind::sub:
      return res_sub(mod, eval_expr(ctx, *e.lhs), eval_expr(ctx, *e.rhs));
    case ExprKind::mul:
      return res_mul(mod, eval_expr(ctx, *e.lhs), eval_expr(ctx, *e.rhs));
    case ExprKind::div_: {
      Residue a = eval_expr(ctx, *e.lhs);
      if (is_constant(*e.rhs)) {
        // dividing by n/d multiplies by d/n; p | n makes the case
        // inapplicable rather than an error
        Rat r = fold_constant(*e.rhs);
        return res_mul(mod, a, rat_residue(mod, Rat{r.d, r.n}));
      }
      return res_mul(mod, a, res_inv(mod, eval_expr(ctx, *e.rhs)));
    }
    case ExprKind::neg:
      return res_neg(mod, eval_expr(ctx, *e.lhs));
    case ExprKind::pow_int:
      if (is_constant(*e.lhs)) return rat_residue(mod, fold_constant(e));
      return res_pow(mod, eval_expr(ctx, *e.lhs), e.ival);
    case ExprKind::pow_fl: {
      long long n =
          e.ival * floor_linear(e.flin.a, e.flin.b, e.flin.c, mod.p);
      if (is_constant(*e.lhs)) {
        Rat r = fold_constant(*e.lhs);
        if (n < 0) {
          std::swap(r.n, r.d);
          r = rat_norm(r);
          n = -n;
        }
        return res_pow(mod, rat_residue(mod, r), n);
      }
      return res_pow(mod, eval_expr(ctx, *e.lhs), n);
    }
    case ExprKind::legendre_a:
      return res_from_int(mod, legendre(e.ival, mod.p));
    case ExprKind::legendre_p: {
      std::uint64_t q = static_cast<std::uint64_t>(e.ival);
      return res_from_int(
          mod, legendre(static_cast<long long>(mod.p % q), q));
    }
    case ExprKind::floor_lin:
      return res_from_int(mod,
                          floor_linear(e.flin.a, e.flin.b, e.flin.c, mod.p));
    case ExprKind::fbinom:
      return binom_floor(mod,
                         floor_linear(e.flin.a, e.flin.b, e.flin.c, mod.p),
                         floor_linear(e.flin2.a, e.flin2.b, e.flin2.c, mod.p));
    case ExprKind::special: {
      long long n = e.flin.a * static_cast<long long>(mod.p) + e.flin.b;
      if (n < 0)
        throw math_error(errc::out_of_range, "special-number index is negative");
      unsigned un = static_cast<unsigned>(n);
      long long key = e.ival * (1LL << 40) + n;
      auto it = ctx.special_cache.find(key);
      if (it == ctx.special_cache.end()) {
        std::uint64_t v = e.ival == 0   ? bernoulli_mod(mod.p, un)
                          : e.ival == 1 ? euler_mod(mod.p, un)
                                        : u_mod(mod.p, un);
        it = ctx.special_cache.emplace(key, v).first;
      }
      return res_from_uint(mod, it->second);
    }
    case ExprKind::builtin: {
      int idx = static_cast<int>(e.ival);
      auto it = ctx.builtin_cache.find(idx);
      if (it == ctx.builtin_cache.end())
        it = ctx.builtin_cache.emplace(idx, eval_builtin(ctx, idx)).first;
      return it->second;
    }
    case ExprKind::sum_node: {
      std::string key = print_expr(e);
      auto it = ctx.sum_cache.find(key);
      if (it != ctx.sum_cache.end()) return it->second;
      Residue r =
          e.sum.seq
              ? sequence_weighted_sum(mod, ctx.tables, e.sum,
                                      ctx.seq_values(*e.sum.seq))
              : weighted_sum(mod, ctx.tables, e.sum);
      ctx.sum_cache.emplace(std::move(key), r);
      return r;
    }
    case ExprKind::ident: {
      if (ctx.owner)
        for (const auto& [name, body] : ctx.owner->defines)
          if (name == e.name) return eval_expr(ctx, *body);
      throw math_error(errc::unsupported, "unknown name '" + e.name + "'");
    }
    case ExprKind::var_k:
    case ExprKind::pow_k:
    case ExprKind::binom_k:
    case ExprKind::seq_k:
      break;
  }
  throw math_error(errc::unsupported, "malformed expression");
}

namespace {

Residue eval_builtin(EvalContext& ctx, int idx) {
  const Modulus& mod = ctx.mod;
  const std::uint64_t p = mod.p;
  auto binom = [&](std::uint64_t n, std::uint64_t r) {
    return binom_floor(mod, static_cast<long long>(n),
                       static_cast<long long>(r));
  };
  auto sq = [&](Residue a) { return res_mul(mod, a, a); };
  switch (idx) {
    case 0: {  // (2p + 2 - 2^(p-1)) * C((p-1)/2, [p/4])^2
      Residue t =
          res_sub(mod, res_from_uint(mod, 2 * p + 2),
                  res_pow(mod, res_from_uint(mod, 2),
                          static_cast<long long>(p) - 1));
      return res_mul(mod, t, sq(binom((p - 1) / 2, p / 4)));
    }
    case 1: {  // R2, with the harmonic piece sum_{k<=[p/8]} 1/k
      long long s = p % 4 == 1 ? 1 : -1;
      Residue harmonic{0};
      for (std::uint64_t k = 1; k <= p / 8; ++k)
        harmonic =
            res_add(mod, harmonic, res_inv(mod, res_from_uint(mod, k)));
      Residue inner = res_from_int(mod, 1);
      inner = res_add(mod, inner,
                      res_mul(mod, res_from_int(mod, 4 + 2 * s),
                              res_from_uint(mod, p)));
      Residue pow2m1 =
          res_sub(mod,
                  res_pow(mod, res_from_uint(mod, 2),
                          static_cast<long long>(p) - 1),
                  res_from_int(mod, 1));
      inner = res_sub(mod, inner, res_mul(mod, res_from_int(mod, 4), pow2m1));
      Residue half_p = res_mul(mod, res_from_uint(mod, p),
                               res_from_rational(mod, 1, 2));
      inner = res_sub(mod, inner, res_mul(mod, half_p, harmonic));
      Residue r = res_mul(mod, res_from_int(mod, 5 - 4 * s), inner);
      return res_mul(mod, r, sq(binom((p - 1) / 2, p / 8)));
    }
    case 2: {  // (1 + 2p + (4/3)(2^(p-1)-1) - (3/2)(3^(p-1)-1)) * C^2
      Residue pow2m1 =
          res_sub(mod,
                  res_pow(mod, res_from_uint(mod, 2),
                          static_cast<long long>(p) - 1),
                  res_from_int(mod, 1));
      Residue pow3m1 =
          res_sub(mod,
                  res_pow(mod, res_from_uint(mod, 3),
                          static_cast<long long>(p) - 1),
                  res_from_int(mod, 1));
      Residue t = res_from_uint(mod, 1 + 2 * p);
      t = res_add(mod, t,
                  res_mul(mod, res_from_rational(mod, 4, 3), pow2m1));
      t = res_sub(mod, t,
                  res_mul(mod, res_from_rational(mod, 3, 2), pow3m1));
      return res_mul(mod, t, sq(binom((p - 1) / 2, p / 6)));
    }
    case 3: {  // half-range sum of C(2k,k)^3 / (k+1)
      SumSpec s;
      s.n2 = 3;
      s.denom = DenomKind::k_plus_1;
      s.denom_exp = 1;
      s.limit = SumLimit::half;
      return weighted_sum(mod, ctx.tables, s);
    }
    case 4: {  // C([3p/11],[p/11])^2 C([6p/11],[3p/11])^2 C([4p/11],[2p/11])^-2
      Residue a = binom(3 * p / 11, p / 11);
      Residue b = binom(6 * p / 11, 3 * p / 11);
      Residue c = binom(4 * p / 11, 2 * p / 11);
      Residue r = res_mul(mod, sq(a), sq(b));
      return res_mul(mod, r, sq(res_inv(mod, c)));
    }
    case 5:  // C((p-1)/2, [p/20]) C((p-1)/2, [3p/20])
      return res_mul(mod, binom((p - 1) / 2, p / 20),
                     binom((p - 1) / 2, 3 * p / 20));
    case 6:  // C((p-1)/2, [p/24]) C((p-1)/2, [5p/24])
      return res_mul(mod, binom((p - 1) / 2, p / 24),
                     binom((p - 1) / 2, 5 * p / 24));
    case 7: {  // C((p-1)/2,[7p/40]) C((p-1)/2,[9p/40]) C([3p/40],[p/40])
               // / C([19p/40],[p/20])
      Residue r = res_mul(mod, binom((p - 1) / 2, 7 * p / 40),
                          binom((p - 1) / 2, 9 * p / 40));
      r = res_mul(mod, r, binom(3 * p / 40, p / 40));
      return res_mul(mod, r, res_inv(mod, binom(19 * p / 40, p / 20)));
    }
    default:
      throw math_error(errc::unsupported, "unknown builtin");
  }
}

}  // namespace

std::vector<VerificationRecord> check_conjecture(EvalContext& ctx,
                                                 const ConjectureSpec& spec,
                                                 unsigned exponent_cap) {
  std::vector<VerificationRecord> out;
  const std::uint64_t p = ctx.mod.p;
  auto base_record = [&](unsigned case_index) {
    VerificationRecord rec;
    rec.conjecture_id = spec.id;
    rec.case_index = case_index;
    rec.prime = p;
    return rec;
  };
  for (std::uint64_t q : spec.excluded) {
    if (q != p) continue;
    VerificationRecord rec = base_record(0);
    rec.outcome = VerificationRecord::Outcome::skipped;
    rec.detail = "excluded-prime";
    out.push_back(std::move(rec));
    return out;
  }
  ctx.owner = &spec;
  for (unsigned i = 0; i < spec.cases.size(); ++i) {
    const CaseSpec& c = spec.cases[i];
    if (!check_condition(c.cond, p)) continue;
    VerificationRecord rec = base_record(i);
    rec.mod_exp = c.mod_exp;
    if (c.mod_exp > exponent_cap) {
      rec.outcome = VerificationRecord::Outcome::skipped;
      rec.detail = "exponent-cap";
      out.push_back(std::move(rec));
      continue;
    }
    if (c.mod_exp > ctx.mod.e) {
      rec.outcome = VerificationRecord::Outcome::skipped;
      rec.detail = "modulus-too-large";
      out.push_back(std::move(rec));
      continue;
    }
    std::optional<QuadRep> rep;
    if (c.rep) {
      try {
        rep = represent_form(p, c.rep->form);
      } catch (const math_error& ex) {
        rec.outcome = VerificationRecord::Outcome::error;
        rec.detail = errc_name(ex.code());
        out.push_back(std::move(rec));
        continue;
      }
      if (!rep) {
        rec.outcome = VerificationRecord::Outcome::error;
        rec.detail = errc_name(errc::representation_not_found);
        out.push_back(std::move(rec));
        continue;
      }
      ctx.rep = &*rep;
    }
    try {
      Residue lhs = eval_expr(ctx, *c.lhs);
      Residue rhs = eval_expr(ctx, *c.rhs);
      if (res_congruent(ctx.mod, lhs, rhs, c.mod_exp)) {
        rec.outcome = VerificationRecord::Outcome::pass;
      } else {
        rec.outcome = VerificationRecord::Outcome::fail;
        std::uint64_t pm = ctx.mod.pow_p(c.mod_exp);
        rec.lhs = lhs.m % pm;
        rec.rhs = rhs.m % pm;
      }
    } catch (const math_error& ex) {
      bool skip = ex.code() == errc::denominator_not_unit ||
                  ex.code() == errc::base_divisible_by_p;
      rec.outcome = skip ? VerificationRecord::Outcome::skipped
                         : VerificationRecord::Outcome::error;
      rec.detail = errc_name(ex.code());
    }
    ctx.rep = nullptr;
    out.push_back(std::move(rec));
  }
  ctx.owner = nullptr;
  return out;
}

}  // namespace supercong
