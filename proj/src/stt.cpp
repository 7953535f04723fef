#include "tva/stt.hpp"

#include <algorithm>
#include <optional>

namespace tva {

namespace {

std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp, uint64_t cap) {
  uint64_t r = 1;
  for (uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return std::nullopt;
    r *= base;
  }
  return r;
}

Term var(const std::string& name, const std::string& sort) {
  Term t;
  t.is_var = true;
  t.name = name;
  t.sort = sort;
  return t;
}

Term fun(const std::string& name, const std::string& sort, std::vector<Term> args = {}) {
  Term t;
  t.name = name;
  t.sort = sort;
  t.args = std::move(args);
  return t;
}

Formula atom(const std::string& pred, std::vector<Term> args) {
  Formula f;
  f.kind = FKind::Atom;
  f.pred = pred;
  f.args = std::move(args);
  return f;
}

Formula binop(FKind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.kids = {std::move(a), std::move(b)};
  return f;
}

Formula quant(FKind k, const std::string& v, const std::string& sort, Formula body) {
  Formula f;
  f.kind = k;
  f.bvar = v;
  f.bsort = sort;
  f.kids = {std::move(body)};
  return f;
}

}  // namespace

uint64_t stt_apply(const std::vector<SttSortInfo>& sorts, int arrow_sort, uint64_t f,
                   uint64_t arg) {
  const SttSortInfo& s = sorts[arrow_sort];
  uint64_t m = sorts[s.from].size, k = sorts[s.to].size;
  uint64_t weight = 1;
  for (uint64_t i = arg + 1; i < m; ++i) weight *= k;
  return f / weight % k;
}

SttResult build_stt_model(const TruthValueAlgebra& alg, int max_depth, uint64_t domain_cap) {
  SttResult out;
  if (!alg.full) {
    out.report.add("stt.full", "the algebra must define the quantifiers on every subset");
    return out;
  }
  auto& sorts = out.sorts;
  std::vector<int> depth;
  sorts.push_back({false, -1, -1, "i", 1});
  depth.push_back(0);
  sorts.push_back({false, -1, -1, "o", uint64_t(alg.size())});
  depth.push_back(0);

  // grow the arrow sorts one depth level at a time
  for (int d = 1; d <= max_depth; ++d) {
    size_t fixed = sorts.size();
    for (size_t a = 0; a < fixed; ++a)
      for (size_t b = 0; b < fixed; ++b) {
        if (std::max(depth[a], depth[b]) != d - 1) continue;
        auto size = checked_pow(sorts[b].size, sorts[a].size, domain_cap);
        if (!size) continue;
        sorts.push_back({true, int(a), int(b), "A" + sorts[a].enc + sorts[b].enc, *size});
        depth.push_back(d);
      }
  }
  std::map<std::pair<int, int>, int> arrows;
  for (size_t s = 0; s < sorts.size(); ++s)
    if (sorts[s].arrow) arrows[{sorts[s].from, sorts[s].to}] = int(s);
  auto find_arrow = [&](int from, int to) -> int {
    auto it = arrows.find({from, to});
    return it == arrows.end() ? -1 : it->second;
  };

  Theory& thy = out.theory;
  BStructure& st = out.structure;
  st.algebra = alg;
  for (const auto& s : sorts) {
    thy.sig.sorts.push_back(s.enc);
    st.domain_sizes[s.enc] = int(s.size);
  }
  thy.claimed_terminating = true;
  thy.claimed_confluent = true;

  // encode g : M_from -> M_to given as a callback
  auto encode = [&](int arrow_sort, auto&& g) -> uint64_t {
    const SttSortInfo& s = sorts[arrow_sort];
    uint64_t m = sorts[s.from].size, k = sorts[s.to].size, r = 0;
    for (uint64_t a = 0; a < m; ++a) r = r * k + g(a);
    return r;
  };
  auto constant = [&](const std::string& name, int sort, uint64_t value) {
    thy.sig.funs[name] = {{}, sorts[sort].enc};
    st.fun_interp[name] = {int(value)};
    return fun(name, sorts[sort].enc);
  };

  // application symbols, one per arrow sort
  std::vector<std::string> alpha_name(sorts.size());
  for (size_t s = 0; s < sorts.size(); ++s) {
    if (!sorts[s].arrow) continue;
    const SttSortInfo& a = sorts[s];
    std::string name = "alpha_" + sorts[a.from].enc + "_" + sorts[a.to].enc;
    alpha_name[s] = name;
    thy.sig.funs[name] = {{a.enc, sorts[a.from].enc}, sorts[a.to].enc};
    auto& table = st.fun_interp[name];
    table.reserve(size_t(a.size * sorts[a.from].size));
    for (uint64_t f = 0; f < a.size; ++f)
      for (uint64_t e = 0; e < sorts[a.from].size; ++e)
        table.push_back(int(stt_apply(sorts, int(s), f, e)));
  }
  auto app = [&](int arrow_sort, Term f, Term a) {
    return fun(alpha_name[arrow_sort], sorts[sorts[arrow_sort].to].enc,
               {std::move(f), std::move(a)});
  };

  // the membership predicate: M_o is the carrier itself
  thy.sig.preds["eps"] = {"o"};
  st.pred_interp["eps"].resize(alg.size());
  for (int i = 0; i < alg.size(); ++i) st.pred_interp["eps"][i] = i;
  auto eps = [&](Term t) { return atom("eps", {std::move(t)}); };

  const int O = 1;
  Term dtop = constant("dtop", O, uint64_t(alg.top));
  Term dbot = constant("dbot", O, uint64_t(alg.bot));
  {
    Formula lhs = eps(dtop);
    Formula rhs;
    rhs.kind = FKind::Top;
    thy.rules.push_back({false, {}, {}, lhs, rhs});
    lhs = eps(dbot);
    rhs.kind = FKind::Bot;
    thy.rules.push_back({false, {}, {}, lhs, rhs});
  }

  // binary connectives, of sort o -> o -> o
  int oo = find_arrow(O, O);
  int ooo = oo < 0 ? -1 : find_arrow(O, oo);
  if (ooo >= 0) {
    struct Conn {
      const char* name;
      FKind kind;
    };
    for (Conn c : {Conn{"dimp", FKind::Imp}, Conn{"dand", FKind::And}, Conn{"dor", FKind::Or}}) {
      auto table = [&](int x, int y) {
        return c.kind == FKind::Imp  ? alg.imp_at(x, y)
               : c.kind == FKind::And ? alg.meet_at(x, y)
                                       : alg.join_at(x, y);
      };
      uint64_t enc = encode(ooo, [&](uint64_t x) {
        return encode(oo, [&](uint64_t y) { return uint64_t(table(int(x), int(y))); });
      });
      Term sym = constant(c.name, ooo, enc);
      Term x = var("x", "o"), y = var("y", "o");
      Formula lhs = eps(app(oo, app(ooo, sym, x), y));
      Formula rhs = binop(c.kind, eps(x), eps(y));
      thy.rules.push_back({false, {}, {}, lhs, rhs});
    }
  }

  // quantifiers, of sort (T -> o) -> o, one pair per constructible T
  for (size_t T = 0; T < sorts.size(); ++T) {
    int to_o = find_arrow(int(T), O);
    if (to_o < 0) continue;
    int qsort = find_arrow(to_o, O);
    if (qsort < 0) continue;
    for (bool universal : {true, false}) {
      uint64_t enc = encode(qsort, [&](uint64_t f) {
        Mask range = 0;
        for (uint64_t e = 0; e < sorts[T].size; ++e)
          range |= Mask(1) << stt_apply(sorts, to_o, f, e);
        return uint64_t(universal ? alg.forall.at(range) : alg.exists.at(range));
      });
      Term sym = constant((universal ? "fa_" : "ex_") + sorts[T].enc, qsort, enc);
      Term x = var("x", sorts[to_o].enc);
      Formula lhs = eps(app(qsort, sym, x));
      Formula rhs = quant(universal ? FKind::Forall : FKind::Exists, "y", sorts[T].enc,
                          eps(app(to_o, x, var("y", sorts[T].enc))));
      thy.rules.push_back({false, {}, {}, lhs, rhs});
    }
  }

  // K_{T,U} : T -> U -> T with alpha(alpha(K,x),y) --> x; a K sort is any
  // arrow T -> (U -> T), so scan those directly
  for (size_t k = 0; k < sorts.size(); ++k) {
    if (!sorts[k].arrow) continue;
    int T = sorts[k].from, ut = sorts[k].to;
    if (!sorts[ut].arrow || sorts[ut].to != T) continue;
    int U = sorts[ut].from;
    int ksort = int(k);
    {
      uint64_t enc = encode(ksort, [&](uint64_t a) {
        return encode(ut, [&](uint64_t) { return a; });
      });
      Term sym = constant("K_" + sorts[T].enc + "_" + sorts[U].enc, ksort, enc);
      Term x = var("x", sorts[T].enc), y = var("y", sorts[U].enc);
      Term lhs = app(ut, app(ksort, sym, x), y);
      thy.rules.push_back({true, lhs, x, {}, {}});
    }
  }

  // S_{T,U,V} : (T -> U -> V) -> (T -> U) -> T -> V; the triple is
  // determined by the first argument sort T -> (U -> V), so scan those
  for (size_t w = 0; w < sorts.size(); ++w) {
    if (!sorts[w].arrow) continue;
    int tuv = int(w), T = sorts[w].from, uv = sorts[w].to;
    if (!sorts[uv].arrow) continue;
    int U = sorts[uv].from, V = sorts[uv].to;
    {
      int tu = find_arrow(T, U);
      int tv = find_arrow(T, V);
      int s2 = (tu < 0 || tv < 0) ? -1 : find_arrow(tu, tv);
      int ssort = s2 < 0 ? -1 : find_arrow(tuv, s2);
      if (ssort >= 0) {
        uint64_t enc = encode(ssort, [&](uint64_t a) {
          return encode(s2, [&](uint64_t b) {
            return encode(tv, [&](uint64_t c) {
              return stt_apply(sorts, uv, stt_apply(sorts, tuv, a, c),
                               stt_apply(sorts, tu, b, c));
            });
          });
        });
        Term sym = constant("S_" + sorts[T].enc + "_" + sorts[U].enc + "_" + sorts[V].enc,
                            ssort, enc);
        Term x = var("x", sorts[tuv].enc), y = var("y", sorts[tu].enc),
             z = var("z", sorts[T].enc);
        Term lhs = app(tv, app(s2, app(ssort, sym, x), y), z);
        Term rhs = app(uv, app(tuv, x, z), app(tu, y, z));
        thy.rules.push_back({true, lhs, rhs, {}, {}});
      }
    }
  }

  out.report = check_model(thy, st);
  return out;
}

}  // namespace tva
