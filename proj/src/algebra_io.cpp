#include "tva/algebra_io.hpp"

#include <fstream>
#include <sstream>

namespace tva {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream is(line.substr(0, line.find('#')));
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

int lookup(const TruthValueAlgebra& alg, const std::string& name, int lineno) {
  int i = alg.index_of(name);
  if (i < 0) throw ParseError(lineno, "unknown carrier element '" + name + "'");
  return i;
}

}  // namespace

TruthValueAlgebra parse_algebra(std::istream& in) {
  TruthValueAlgebra alg;
  std::string line;
  int lineno = 0;
  int imp_rows = 0, and_rows = 0, or_rows = 0;
  bool seen_carrier = false, seen_positives = false, seen_top = false, seen_bot = false,
       seen_full = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& key = toks[0];

    if (key == "carrier") {
      if (seen_carrier) throw ParseError(lineno, "duplicate carrier line");
      seen_carrier = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        if (alg.index_of(toks[i]) >= 0)
          throw ParseError(lineno, "duplicate carrier element '" + toks[i] + "'");
        alg.carrier.push_back(toks[i]);
      }
      if (alg.carrier.empty()) throw ParseError(lineno, "empty carrier");
      if (alg.size() > kMaxCarrier)
        throw ParseError(lineno, "carrier exceeds supported size " + std::to_string(kMaxCarrier));
      continue;
    }
    if (!seen_carrier) throw ParseError(lineno, "carrier must come first");
    const int n = alg.size();

    if (key == "positives") {
      if (seen_positives) throw ParseError(lineno, "duplicate positives line");
      seen_positives = true;
      for (size_t i = 1; i < toks.size(); ++i)
        alg.positives |= Mask(1) << lookup(alg, toks[i], lineno);
    } else if (key == "top" || key == "bot") {
      if (toks.size() != 2) throw ParseError(lineno, key + " expects one element");
      bool& seen = (key == "top") ? seen_top : seen_bot;
      if (seen) throw ParseError(lineno, "duplicate " + key + " line");
      seen = true;
      (key == "top" ? alg.top : alg.bot) = lookup(alg, toks[1], lineno);
    } else if (key == "imp" || key == "and" || key == "or") {
      if (static_cast<int>(toks.size()) != n + 1)
        throw ParseError(lineno, key + " row expects " + std::to_string(n) + " entries");
      std::vector<int>& table = (key == "imp") ? alg.imp : (key == "and") ? alg.meet : alg.join;
      int& rows = (key == "imp") ? imp_rows : (key == "and") ? and_rows : or_rows;
      if (rows >= n) throw ParseError(lineno, "too many " + key + " rows");
      for (int j = 0; j < n; ++j) table.push_back(lookup(alg, toks[j + 1], lineno));
      ++rows;
    } else if (key == "full") {
      if (toks.size() != 2 || (toks[1] != "true" && toks[1] != "false"))
        throw ParseError(lineno, "full expects true or false");
      if (seen_full) throw ParseError(lineno, "duplicate full line");
      seen_full = true;
      alg.full = (toks[1] == "true");
    } else if (key == "forall" || key == "exists") {
      size_t arrow = 0;
      for (size_t i = 1; i < toks.size(); ++i)
        if (toks[i] == "->") arrow = i;
      if (arrow == 0 || arrow + 2 != toks.size())
        throw ParseError(lineno, key + " expects '<elements...> -> <value>'");
      Mask m = 0;
      for (size_t i = 1; i < arrow; ++i) m |= Mask(1) << lookup(alg, toks[i], lineno);
      int v = lookup(alg, toks[arrow + 1], lineno);
      auto& dom = (key == "forall") ? alg.forall : alg.exists;
      if (dom.count(m)) throw ParseError(lineno, "duplicate " + key + " subset");
      dom[m] = v;
    } else if (key == "order") {
      if (toks.size() != 3) throw ParseError(lineno, "order expects two elements");
      if (!alg.order_pairs) alg.order_pairs.emplace();
      alg.order_pairs->emplace_back(lookup(alg, toks[1], lineno), lookup(alg, toks[2], lineno));
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
  }

  if (!seen_carrier) throw ParseError(lineno, "missing carrier");
  const int n = alg.size();
  if (!seen_top || !seen_bot) throw ParseError(lineno, "missing top or bot");
  if (imp_rows != n || and_rows != n || or_rows != n)
    throw ParseError(lineno, "imp/and/or must each have exactly " + std::to_string(n) + " rows");
  if (alg.full) {
    size_t want = size_t(1) << n;
    if (alg.forall.size() != want || alg.exists.size() != want)
      throw ParseError(lineno, "full algebra must define forall/exists on every subset");
  }
  return alg;
}

TruthValueAlgebra parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_algebra(in);
}

std::string serialize_algebra(const TruthValueAlgebra& alg) {
  std::ostringstream out;
  const int n = alg.size();
  out << "carrier";
  for (const auto& c : alg.carrier) out << " " << c;
  out << "\npositives";
  for (int i = 0; i < n; ++i)
    if (alg.positive(i)) out << " " << alg.carrier[i];
  out << "\ntop " << alg.carrier[alg.top];
  out << "\nbot " << alg.carrier[alg.bot] << "\n";
  auto table = [&](const char* key, const std::vector<int>& t) {
    for (int i = 0; i < n; ++i) {
      out << key;
      for (int j = 0; j < n; ++j) out << " " << alg.carrier[t[i * n + j]];
      out << "\n";
    }
  };
  table("imp", alg.imp);
  table("and", alg.meet);
  table("or", alg.join);
  out << "full " << (alg.full ? "true" : "false") << "\n";
  auto quant = [&](const char* key, const std::map<Mask, int>& q) {
    for (const auto& [m, v] : q) {
      out << key;
      for (int i = 0; i < n; ++i)
        if ((m >> i) & 1u) out << " " << alg.carrier[i];
      out << " -> " << alg.carrier[v] << "\n";
    }
  };
  quant("forall", alg.forall);
  quant("exists", alg.exists);
  if (alg.order_pairs)
    for (auto [a, b] : *alg.order_pairs)
      out << "order " << alg.carrier[a] << " " << alg.carrier[b] << "\n";
  return out.str();
}

void write_algebra_file(const TruthValueAlgebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize_algebra(alg);
}

}  // namespace tva
