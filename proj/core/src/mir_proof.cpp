#include "exactcuts/mir_proof.hpp"

#include <stdexcept>

namespace exactcuts {

using vipr::Constraint;
using vipr::Term;

MirSplitWitness split_witness(const MirData& mir) {
  MirSplitWitness w;
  w.rhs = mir.floor_d;
  for (std::size_t i = 0; i < mir.terms.size(); ++i) {
    const auto& t = mir.terms[i];
    const int pos = static_cast<int>(i);
    if (!t.is_integer) {
      w.continuous.push_back(pos);
    } else if (frac_of(t.g) <= mir.f) {
      w.n1.push_back(pos);
      w.w[pos] = floor_of(t.g);
    } else {
      w.n2.push_back(pos);
      w.w[pos] = ceil_of(t.g);
    }
  }
  return w;
}

namespace {

struct Affine {
  SparseVec coefs;
  Rational constant;

  void add(int j, const Rational& v) {
    Rational& c = coefs[j];
    c += v;
    if (sgn(c) == 0) coefs.erase(j);
  }
};

bool same_row(const RelaxedRow& a, const RelaxedRow& b) { return a.rhs == b.rhs && a.coefficients == b.coefficients; }

class Emitter {
 public:
  Emitter(const Cut& cut, CertificateBuilder& b, MirProofContext& ctx, const std::string& tag)
      : cut_(cut), b_(b), ctx_(ctx), tag_(tag) {}

  MirProofIndices run() {
    const MirData& mir = cut_.mir;
    if (mir.terms.empty() && cut_.frows.empty()) throw std::logic_error("MIR proof: cut has no provenance");
    const MirSplitWitness wit = split_witness(mir);
    const Rational f = mir.f;
    const Rational omf = 1 - f;
    MirProofIndices out;

    for (const auto& t : mir.terms)
      if (t.slack) frow_ref(t.index);

    // (w - u)(z) <= d, from the base row by dropping nonnegative terms.
    Affine base;
    std::vector<Term> base_payload;
    std::vector<Term> u_payload;
    Affine w;
    for (std::size_t i = 0; i < mir.terms.size(); ++i) {
      const MirTerm& t = mir.terms[i];
      const Term zge = z_nonneg(t);
      if (t.is_integer) {
        const Rational fj = frac_of(t.g);
        if (fj <= f) {
          add_z(base, t, Rational(floor_of(t.g)));
          if (sgn(fj) != 0) base_payload.push_back({zge.index, -fj * zge.multiplier});
        } else {
          add_z(base, t, t.g);
          u_payload.push_back({zge.index, (Rational(ceil_of(t.g)) - t.g) * zge.multiplier});
        }
        add_z(w, t, Rational(wit.w.at(static_cast<int>(i))));
      } else if (sgn(t.g) < 0) {
        add_z(base, t, t.g);
        u_payload.push_back({zge.index, -t.g * zge.multiplier});
      } else if (sgn(t.g) > 0) {
        base_payload.push_back({zge.index, -t.g * zge.multiplier});
      }
    }
    out.base = b_.add_weak(tag_ + "_base", {"", Sense::le, mir.d - base.constant, base.coefs}, base_payload);
    out.u_nonneg = b_.add_lin(tag_ + "_u", u_payload);
    const Rational fd(mir.floor_d);
    out.split_down = b_.add_assumption(tag_ + "_dn", {"", Sense::le, fd - w.constant, w.coefs});
    out.split_up = b_.add_assumption(tag_ + "_up", {"", Sense::ge, fd + 1 - w.constant, w.coefs});
    out.side1 = b_.add_lin(tag_ + "_s1", {{out.split_down, Rational(1)}, {out.u_nonneg, -1 / omf}});
    out.side2 = b_.add_lin(tag_ + "_s2", {{out.base, -1 / omf}, {out.split_up, f / omf}});
    out.side2_negated = b_.add_lin(tag_ + "_s2n", {{out.side2, Rational(-1)}});
    const Constraint& s1 = b_.at(out.side1);
    const Constraint& s2 = b_.at(out.side2_negated);
    if (s1.sense != s2.sense || s1.rhs != s2.rhs || s1.coefficients != s2.coefficients)
      throw std::logic_error("MIR proof: the two split sides disagree");
    out.unsplit = b_.add_uns(tag_ + "_mir", s1, out.side1, out.split_down, out.side2_negated, out.split_up);

    const Rational& sigma = cut_.scaling_factor;
    std::vector<Term> fin{{out.unsplit, sigma}};
    for (const auto& t : mir.terms) {
      if (!t.slack) continue;
      const Rational gap = t.exact_coef - t.safe_coef;
      if (sgn(gap) == 0) continue;
      const CertRef r = frow_ref(t.index);
      fin.push_back({r.index, sigma * gap * r.sign});
    }
    if (cut_.integral_scaled) {
      out.pre_round =
          b_.add_weak(tag_ + "_pre", {"", Sense::le, cut_.pre_round_rhs, cut_.pre_round_coefficients}, fin);
      out.final_cut = b_.add_rnd(tag_, {{*out.pre_round, Rational(1)}});
      const Constraint& c = b_.at(out.final_cut);
      if (c.coefficients != cut_.coefficients || c.rhs != cut_.rhs)
        throw std::logic_error("MIR proof: rounded cut does not match");
    } else {
      out.final_cut = b_.add_weak(tag_, {"", Sense::le, cut_.rhs, cut_.coefficients}, fin);
    }
    return out;
  }

 private:
  // F-row of LP row k as a <= statement: sign * constraint(index).
  CertRef frow_ref(int k) {
    const RelaxedRow& rr = cut_.frows.at(k);
    if (!rr.relaxed) return ctx_.lp_rows.at(k);
    auto it = ctx_.relaxed_cache.find(k);
    if (it != ctx_.relaxed_cache.end() && same_row(it->second.first, rr)) return {it->second.second, 1};
    SparseVec coefs;
    for (const auto& [j, a] : rr.coefficients) coefs[j] = Rational(a);
    const CertRef src = ctx_.lp_rows.at(k);
    const int idx = b_.add_weak(tag_ + "_row" + std::to_string(k), {"", Sense::le, Rational(rr.rhs), coefs},
                                {{src.index, Rational(src.sign)}});
    ctx_.relaxed_cache[k] = {rr, idx};
    return {idx, 1};
  }

  // Reference r with multiplier m such that m * constraint(r) reads z >= 0.
  Term z_nonneg(const MirTerm& t) {
    if (t.slack) {
      const CertRef r = frow_ref(t.index);
      return {r.index, Rational(-r.sign)};
    }
    if (t.side == Side::lower) {
      if (!ctx_.lower.at(t.index)) throw std::logic_error("MIR proof: missing lower bound constraint");
      return {*ctx_.lower[t.index], Rational(1)};
    }
    if (!ctx_.upper.at(t.index)) throw std::logic_error("MIR proof: missing upper bound constraint");
    return {*ctx_.upper[t.index], Rational(-1)};
  }

  // acc += h * z(x), with z affine in x.
  void add_z(Affine& acc, const MirTerm& t, const Rational& h) {
    if (sgn(h) == 0) return;
    if (t.slack) {
      const RelaxedRow& rr = cut_.frows.at(t.index);
      for (const auto& [j, a] : rr.coefficients) acc.add(j, -h * Rational(a));
      acc.constant += h * Rational(rr.rhs);
    } else if (t.side == Side::lower) {
      acc.add(t.index, h);
      acc.constant -= h * t.bound;
    } else {
      acc.add(t.index, -h);
      acc.constant += h * t.bound;
    }
  }

  const Cut& cut_;
  CertificateBuilder& b_;
  MirProofContext& ctx_;
  std::string tag_;
};

}  // namespace

MirProofIndices emit_mir_proof(const Cut& cut, CertificateBuilder& b, MirProofContext& ctx, const std::string& tag) {
  return Emitter(cut, b, ctx, tag).run();
}

}  // namespace exactcuts
