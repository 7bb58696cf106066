#include "exdep/grammar.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <vector>

#include "exdep/errors.hpp"

namespace exdep {
namespace {

struct Arg {
  std::string name;  // empty for positional
  double value = 0.0;
};

struct Call {
  std::string fn;
  std::vector<Arg> args;
};

Call tokenize(const std::string& s) {
  Call call;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto fail = [&](const std::string& why) -> void {
    throw ConfigError("bad model expression '" + s + "': " + why);
  };
  skip_ws();
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
    call.fn += s[i++];
  if (call.fn.empty()) fail("expected a family name");
  skip_ws();
  if (i >= s.size() || s[i] != '(') fail("expected '('");
  ++i;
  for (;;) {
    skip_ws();
    if (i < s.size() && s[i] == ')') break;
    std::string ident;
    const std::size_t mark = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ident += s[i++];
    skip_ws();
    Arg arg;
    if (!ident.empty() && i < s.size() && s[i] == '=') {
      ++i;
      skip_ws();
      arg.name = ident;
    } else {
      i = mark;  // rewind: the token was the start of a number
    }
    const char* begin = s.c_str() + i;
    char* end = nullptr;
    arg.value = std::strtod(begin, &end);
    if (end == begin) fail("expected a numeric argument");
    i += static_cast<std::size_t>(end - begin);
    call.args.push_back(arg);
    skip_ws();
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ')') break;
    fail("expected ',' or ')'");
  }
  if (i >= s.size() || s[i] != ')') fail("expected ')'");
  ++i;
  skip_ws();
  if (i != s.size()) fail("trailing characters");
  return call;
}

int as_dim(double v) {
  const int d = static_cast<int>(v);
  if (static_cast<double>(d) != v) throw ConfigError("dimension must be an integer");
  return d;
}

double named_or_positional(const Call& call, const std::string& name, std::size_t pos) {
  std::optional<double> found;
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (call.args[i].name == name || (call.args[i].name.empty() && i == pos)) {
      if (found) throw ConfigError("duplicate parameter '" + name + "' in '" + call.fn + "'");
      found = call.args[i].value;
    } else if (!call.args[i].name.empty() && call.args[i].name != name) {
      throw ConfigError("unknown parameter '" + call.args[i].name + "' in '" + call.fn + "'");
    }
  }
  if (!found) throw ConfigError("missing parameter '" + name + "' in '" + call.fn + "'");
  return *found;
}

void expect_arity(const Call& call, std::size_t n) {
  if (call.args.size() != n)
    throw ConfigError("'" + call.fn + "' takes " + std::to_string(n) + " argument(s)");
}

}  // namespace

ModelExpr parse_model(const std::string& s) {
  const Call call = tokenize(s);
  ModelExpr e;
  if (call.fn == "h0") {
    expect_arity(call, 1);
    e.kind = DistKind::h0;
    e.d = as_dim(call.args[0].value);
  } else if (call.fn == "hinf") {
    expect_arity(call, 1);
    e.kind = DistKind::hinf;
    e.d = as_dim(call.args[0].value);
  } else if (call.fn == "indep_frechet") {
    expect_arity(call, 1);
    e.kind = DistKind::indep_frechet;
    e.d = as_dim(call.args[0].value);
  } else if (call.fn == "logistic") {
    expect_arity(call, 2);
    e.kind = DistKind::logistic;
    e.d = as_dim(call.args[0].value);
    e.alpha = named_or_positional(call, "alpha", 1);
  } else if (call.fn == "husler_reiss") {
    expect_arity(call, 2);
    e.kind = DistKind::husler_reiss;
    e.d = as_dim(call.args[0].value);
    e.gamma = named_or_positional(call, "gamma", 1);
  } else if (call.fn == "gauss_copula") {
    expect_arity(call, 2);
    e.kind = DistKind::gauss_copula;
    e.d = as_dim(call.args[0].value);
    e.rho = named_or_positional(call, "rho", 1);
  } else {
    throw ConfigError("unknown family '" + call.fn + "'");
  }
  e.text = to_distribution(e).name;
  return e;
}

SpectralModel to_spectral(const ModelExpr& e) {
  switch (e.kind) {
    case DistKind::h0:
    case DistKind::indep_frechet:
      return make_h0(e.d);
    case DistKind::hinf:
      return make_hinf(e.d);
    case DistKind::logistic:
      return make_logistic(e.d, e.alpha);
    case DistKind::husler_reiss:
      return make_husler_reiss(e.d, e.gamma);
    case DistKind::gauss_copula:
      throw CapabilityError("gauss_copula is not max-stable: no spectral model");
  }
  throw ConfigError("unreachable family kind");
}

DistributionSpec to_distribution(const ModelExpr& e) {
  switch (e.kind) {
    case DistKind::h0:
      return dist_h0(e.d);
    case DistKind::hinf:
      return dist_hinf(e.d);
    case DistKind::indep_frechet:
      return dist_indep_frechet(e.d);
    case DistKind::logistic:
      return dist_logistic(e.d, e.alpha);
    case DistKind::husler_reiss:
      return dist_husler_reiss(e.d, e.gamma);
    case DistKind::gauss_copula:
      return dist_gauss_copula(e.d, e.rho);
  }
  throw ConfigError("unreachable family kind");
}

}  // namespace exdep
