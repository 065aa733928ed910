#include "tbf/boolfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace tbf {

int TruthTable::eval(const BitString& x) const {
  if (static_cast<int>(x.size()) != arity) throw std::invalid_argument("arity mismatch");
  std::uint32_t mask = 0;
  for (int i = 0; i < arity; ++i)
    if (x.get(i)) mask |= 1u << i;  // variable 1 = LSB
  return rows[mask];
}

std::string TruthTable::serialize() const {
  std::string s = "arity=" + std::to_string(arity) + "\n";
  s.reserve(s.size() + rows.size() + 1);
  for (auto r : rows) s.push_back(r ? '1' : '0');
  s.push_back('\n');
  return s;
}

TruthTable TruthTable::parse(std::string_view text) {
  std::size_t nl = text.find('\n');
  if (nl == std::string_view::npos || text.substr(0, 6) != "arity=")
    throw std::invalid_argument("truth table must start with arity=<k>");
  int k = std::stoi(std::string(text.substr(6, nl - 6)));
  if (k < 0 || k > 26) throw std::invalid_argument("arity out of range");
  TruthTable tt;
  tt.arity = k;
  tt.rows.reserve(std::size_t(1) << k);
  for (std::size_t i = nl + 1; i < text.size(); ++i) {
    char c = text[i];
    if (c == '0' || c == '1')
      tt.rows.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != '\n' && c != '\r' && c != ' ')
      throw std::invalid_argument("bad truth table character");
  }
  if (tt.rows.size() != (std::size_t(1) << k)) throw std::invalid_argument("row count mismatch");
  return tt;
}

int BooleanFunction::eval(const BitString& x) const {
  if (static_cast<int>(x.size()) != arity()) throw std::invalid_argument("arity mismatch");
  return eval_bits(x.data());
}

namespace {

long long isqrt_ll(long long v) {
  long long r = static_cast<long long>(std::max(0.0, std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

struct NamedFn : BooleanFunction {
  std::string id;
  std::vector<long long> params;
  int n;  // arity

  int arity() const override { return n; }
  std::string describe() const override {
    std::string s = id;
    for (std::size_t i = 0; i < params.size(); ++i)
      s += (i ? "," : ":") + std::to_string(params[i]);
    return s;
  }

  int eval_bits(const std::uint8_t* x) const override {
    if (id == "AND") {
      for (int i = 0; i < n; ++i)
        if (!x[i]) return 0;
      return 1;
    }
    if (id == "OR") {
      for (int i = 0; i < n; ++i)
        if (x[i]) return 1;
      return 0;
    }
    if (id == "PARITY") {
      int p = 0;
      for (int i = 0; i < n; ++i) p ^= x[i];
      return p;
    }
    if (id == "MAJORITY") {
      int w = 0;
      for (int i = 0; i < n; ++i) w += x[i];
      return 2 * w > n ? 1 : 0;
    }
    if (id == "NAND") return !(x[0] && x[1]);
    if (id == "XNOR") return x[0] == x[1];  // 0 iff inputs differ
    if (id == "NW") {
      // 0 exactly on the two constant inputs
      return (x[0] == x[1] && x[1] == x[2]) ? 0 : 1;
    }
    if (id == "RUB") {
      // OR over k groups of k bits; a group accepts exactly one pair of ones
      // occupying an aligned slot (bits 2i-1, 2i) with the rest of the group
      // zero.  Alignment matters: allowing arbitrary adjacent pairs would give
      // low-weight inputs two sensitive flips per group and double the
      // function's sensitivity.
      int k = static_cast<int>(params[0]);
      for (int g = 0; g < k; ++g) {
        const std::uint8_t* grp = x + g * k;
        int w = 0;
        for (int i = 0; i < k; ++i) w += grp[i];
        if (w != 2) continue;
        for (int i = 0; i + 1 < k; i += 2)
          if (grp[i] && grp[i + 1]) return 1;
      }
      return 0;
    }
    if (id == "GSS1") {
      // 1 iff weight >= sqrt(n) and all ones inside a single group of 2 sqrt(n)
      int d = static_cast<int>(isqrt_ll(n)), k = 2 * d;
      int total = 0;
      for (int i = 0; i < n; ++i) total += x[i];
      if (total < d) return 0;
      for (int g = 0; g < n / k; ++g) {
        int w = 0;
        for (int i = 0; i < k; ++i) w += x[g * k + i];
        if (w == total) return 1;
      }
      return 0;
    }
    if (id == "GSS2") {
      // edges of K_t in lex order; 1 iff a nonempty edge set shares a vertex
      int t = static_cast<int>(params[0]);
      int idx = 0;
      std::vector<int> deg(t + 1, 0);
      int edges = 0;
      std::pair<int, int> last;
      for (int i = 1; i <= t; ++i)
        for (int j = i + 1; j <= t; ++j, ++idx)
          if (x[idx]) {
            ++edges;
            ++deg[i];
            ++deg[j];
            last = {i, j};
          }
      if (edges == 0) return 0;
      return (deg[last.first] == edges || deg[last.second] == edges) ? 1 : 0;
    }
    if (id == "KSUM") {
      // blocks of w bits, LSB first; 1 iff k distinct blocks sum to 0 mod 2^w
      int k = static_cast<int>(params[0]);
      int blocks = static_cast<int>(params[1]);
      int w = static_cast<int>(params[2]);
      std::vector<std::uint64_t> vals(blocks, 0);
      for (int b = 0; b < blocks; ++b)
        for (int i = 0; i < w; ++i)
          if (x[b * w + i]) vals[b] |= std::uint64_t(1) << i;
      std::uint64_t mod = (w == 64) ? 0 : (std::uint64_t(1) << w);
      // choose k distinct indices
      std::vector<int> pick(k);
      int found = 0;
      auto rec = [&](auto&& self, int start, int depth, std::uint64_t sum) -> void {
        if (found) return;
        if (depth == k) {
          if ((mod ? sum % mod : sum) == 0) found = 1;
          return;
        }
        for (int i = start; i < blocks; ++i) self(self, i + 1, depth + 1, sum + vals[i]);
      };
      rec(rec, 0, 0, 0);
      return found;
    }
    throw std::logic_error("unhandled named function " + id);
  }
};

struct TableFn : BooleanFunction {
  TruthTable tt;
  int arity() const override { return tt.arity; }
  std::string describe() const override { return "TABLE:" + std::to_string(tt.arity); }
  int eval_bits(const std::uint8_t* x) const override {
    std::uint32_t mask = 0;
    for (int i = 0; i < tt.arity; ++i)
      if (x[i]) mask |= 1u << i;
    return tt.rows[mask];
  }
};

struct ComposeFn : BooleanFunction {
  FnPtr f, g;
  int ar;
  int arity() const override { return ar; }
  std::string describe() const override { return f->describe() + " o " + g->describe(); }
  int eval_bits(const std::uint8_t* x) const override {
    int af = f->arity(), ag = g->arity();
    std::vector<std::uint8_t> y(af);
    for (int i = 0; i < af; ++i) y[i] = static_cast<std::uint8_t>(g->eval_bits(x + i * ag));
    return f->eval_bits(y.data());
  }
};

}  // namespace

FnPtr make_named(const std::string& name, const std::vector<long long>& params) {
  auto fn = std::make_shared<NamedFn>();
  fn->id = name;
  fn->params = params;
  auto need = [&](std::size_t cnt) {
    if (params.size() != cnt)
      throw std::invalid_argument(name + " takes " + std::to_string(cnt) + " parameter(s)");
  };
  if (name == "AND" || name == "OR" || name == "PARITY" || name == "MAJORITY") {
    need(1);
    if (params[0] < 1 || params[0] > 1000000) throw std::invalid_argument("bad arity");
    fn->n = static_cast<int>(params[0]);
  } else if (name == "NAND" || name == "XNOR") {
    need(0);
    fn->n = 2;
  } else if (name == "NW") {
    need(0);
    fn->n = 3;
  } else if (name == "RUB") {
    need(1);
    if (params[0] < 2 || params[0] > 1000) throw std::invalid_argument("RUB needs k >= 2");
    fn->n = static_cast<int>(params[0] * params[0]);
  } else if (name == "GSS1") {
    need(1);
    long long nn = params[0];
    long long d = isqrt_ll(nn);
    if (nn < 4 || d * d != nn || nn % 2 != 0)
      throw std::invalid_argument("GSS1 needs an even perfect square");
    fn->n = static_cast<int>(nn);
  } else if (name == "GSS2") {
    need(1);
    if (params[0] < 2 || params[0] > 2000) throw std::invalid_argument("GSS2 needs t >= 2");
    fn->n = static_cast<int>(params[0] * (params[0] - 1) / 2);
  } else if (name == "KSUM") {
    need(3);
    long long k = params[0], blocks = params[1], w = params[2];
    if (k < 1 || blocks < k || w < 1 || w > 62) throw std::invalid_argument("bad KSUM parameters");
    fn->n = static_cast<int>(blocks * w);
  } else {
    throw std::invalid_argument("unknown function name: " + name);
  }
  return fn;
}

FnPtr make_table(TruthTable tt) {
  auto fn = std::make_shared<TableFn>();
  fn->tt = std::move(tt);
  return fn;
}

FnPtr compose(FnPtr f, FnPtr g) {
  if (!f || !g) throw std::invalid_argument("compose: null function");
  long long ar = static_cast<long long>(f->arity()) * g->arity();
  if (ar > 100000000) throw std::invalid_argument("composed arity too large");
  auto fn = std::make_shared<ComposeFn>();
  fn->f = std::move(f);
  fn->g = std::move(g);
  fn->ar = static_cast<int>(ar);
  return fn;
}

FnPtr iterate(FnPtr f, int depth) {
  if (depth < 1) throw std::invalid_argument("iterate depth must be >= 1");
  FnPtr out = f;
  for (int i = 1; i < depth; ++i) out = compose(f, out);
  return out;
}

namespace {

FnPtr parse_term(std::string_view t) {
  int depth = 1;
  std::size_t caret = t.rfind('^');
  if (caret != std::string_view::npos) {
    depth = std::stoi(std::string(t.substr(caret + 1)));
    t = t.substr(0, caret);
  }
  std::string name;
  std::vector<long long> params;
  std::size_t colon = t.find(':');
  if (colon == std::string_view::npos) {
    name = std::string(t);
  } else {
    name = std::string(t.substr(0, colon));
    std::string rest(t.substr(colon + 1));
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ','))
      params.push_back(std::stoll(item));
  }
  return iterate(make_named(name, params), depth);
}

}  // namespace

FnPtr parse_function_spec(std::string_view spec) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : spec) {
    if (c == ' ' || c == '\t') {
      if (!cur.empty()) tokens.push_back(cur), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  if (tokens.empty()) throw std::invalid_argument("empty function spec");
  FnPtr acc;
  bool expect_term = true;
  for (const auto& tok : tokens) {
    if (expect_term) {
      FnPtr t = parse_term(tok);
      acc = acc ? compose(acc, t) : t;
      expect_term = false;
    } else {
      if (tok != "o") throw std::invalid_argument("expected 'o' between terms");
      expect_term = true;
    }
  }
  if (expect_term) throw std::invalid_argument("dangling composition");
  return acc;
}

TruthTable truth_table(const BooleanFunction& f) {
  int n = f.arity();
  if (n > 24) throw std::invalid_argument("truth table arity cap is 24");
  TruthTable tt;
  tt.arity = n;
  tt.rows.resize(std::size_t(1) << n);
  std::vector<std::uint8_t> x(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
    tt.rows[mask] = static_cast<std::uint8_t>(f.eval_bits(x.data()));
  }
  return tt;
}

TruthTable truth_table(const FnPtr& f) { return truth_table(*f); }

}  // namespace tbf
