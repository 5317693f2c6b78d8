#include "ppa/ratefn.hpp"

#include "ppa/error.hpp"

#include <algorithm>
#include <map>

namespace ppa {

struct RateFn::Node {
  Op op;
  Rational value;                 // constant
  std::vector<Nat> table;         // table
  std::vector<std::shared_ptr<const Node>> args;
  bool monotone = false;
};

namespace {

using NodePtr = std::shared_ptr<const RateFn::Node>;
using Op = RateFn::Op;

const std::map<Op, std::string>& op_names() {
  static const std::map<Op, std::string> names = {
      {Op::constant, "const"},     {Op::variable, "var"},
      {Op::add, "add"},            {Op::mul, "mul"},
      {Op::monus, "monus"},        {Op::max, "max"},
      {Op::ceil_div, "ceil_div"},  {Op::power, "pow"},
      {Op::ceil, "ceil"},          {Op::isqrt_ceil, "isqrt_ceil"},
      {Op::compose, "compose"},    {Op::max_prefix, "max_prefix"},
      {Op::table, "table"},
  };
  return names;
}

std::size_t arity(Op op) {
  switch (op) {
    case Op::constant:
    case Op::variable:
    case Op::table:
      return 0;
    case Op::ceil:
    case Op::isqrt_ceil:
    case Op::max_prefix:
      return 1;
    default:
      return 2;
  }
}

NodePtr make(Op op, std::vector<NodePtr> args) {
  auto node = std::make_shared<RateFn::Node>();
  node->op = op;
  node->args = std::move(args);
  const auto& a = node->args;
  auto all_mono = [&] {
    return std::all_of(a.begin(), a.end(),
                       [](const NodePtr& x) { return x->monotone; });
  };
  switch (op) {
    case Op::add:
    case Op::mul:
    case Op::max:
    case Op::ceil:
    case Op::isqrt_ceil:
    case Op::compose:
      node->monotone = all_mono();
      break;
    case Op::monus:
    case Op::ceil_div:
      node->monotone = a[0]->monotone && a[1]->op == Op::constant;
      break;
    case Op::power:
      node->monotone =
          (a[0]->monotone && a[1]->op == Op::constant) ||
          (a[0]->op == Op::constant && a[0]->value >= 1 && a[1]->monotone);
      break;
    case Op::max_prefix:
      node->monotone = true;
      break;
    default:
      break;
  }
  return node;
}

Nat require_nat(const Rational& q, const char* context) {
  if (!is_integer(q) || q < 0) {
    throw InvalidArgument(std::string(context) + ": expected a natural number, got " +
                          to_string(q));
  }
  return boost::multiprecision::numerator(q);
}

void check_bits(std::uint64_t bits, const EvalLimits& limits, const char* what) {
  if (bits > limits.max_bits) {
    throw MagnitudeLimitExceeded(std::string(what) + " would need about " +
                                 std::to_string(bits) + " bits (limit " +
                                 std::to_string(limits.max_bits) + ")");
  }
}

std::uint64_t rational_bits(const Rational& q) {
  return bit_length(boost::multiprecision::numerator(q)) +
         bit_length(boost::multiprecision::denominator(q));
}

Rational eval(const RateFn::Node& node, const Nat& n, const EvalLimits& limits) {
  switch (node.op) {
    case Op::constant:
      return node.value;
    case Op::variable:
      return Rational(n);
    case Op::table: {
      if (n >= node.table.size()) return Rational(node.table.back());
      return Rational(node.table[n.convert_to<std::size_t>()]);
    }
    case Op::add:
      return eval(*node.args[0], n, limits) + eval(*node.args[1], n, limits);
    case Op::mul: {
      Rational a = eval(*node.args[0], n, limits);
      Rational b = eval(*node.args[1], n, limits);
      check_bits(rational_bits(a) + rational_bits(b), limits, "product");
      return a * b;
    }
    case Op::monus: {
      Rational a = eval(*node.args[0], n, limits);
      Rational b = eval(*node.args[1], n, limits);
      return a > b ? Rational(a - b) : Rational(0);
    }
    case Op::max: {
      Rational a = eval(*node.args[0], n, limits);
      Rational b = eval(*node.args[1], n, limits);
      return a < b ? b : a;
    }
    case Op::ceil_div: {
      Rational a = eval(*node.args[0], n, limits);
      Rational b = eval(*node.args[1], n, limits);
      if (b == 0) throw InvalidArgument("ceil_div by zero");
      return Rational(ppa::ceil(a / b));
    }
    case Op::power: {
      Rational base = eval(*node.args[0], n, limits);
      Nat exponent = require_nat(eval(*node.args[1], n, limits), "pow exponent");
      if (base == 0 || base == 1) return exponent == 0 ? Rational(1) : base;
      const std::uint64_t base_bits =
          std::max(bit_length(boost::multiprecision::numerator(base)),
                   bit_length(boost::multiprecision::denominator(base)));
      if (!fits_u64(exponent) ||
          base_bits > limits.max_bits / std::max<std::uint64_t>(
                                            1, exponent.convert_to<std::uint64_t>())) {
        throw MagnitudeLimitExceeded(
            "power with a " + std::to_string(bit_length(exponent)) +
            "-bit exponent exceeds the bit limit " + std::to_string(limits.max_bits));
      }
      auto e = exponent.convert_to<unsigned>();
      Nat num = boost::multiprecision::pow(boost::multiprecision::numerator(base), e);
      Nat den = boost::multiprecision::pow(boost::multiprecision::denominator(base), e);
      return Rational(num, den);
    }
    case Op::ceil:
      return Rational(ppa::ceil(eval(*node.args[0], n, limits)));
    case Op::isqrt_ceil:
      return Rational(ppa::isqrt_ceil(ppa::ceil(eval(*node.args[0], n, limits))));
    case Op::compose: {
      Nat inner = require_nat(eval(*node.args[1], n, limits), "compose inner");
      return eval(*node.args[0], inner, limits);
    }
    case Op::max_prefix: {
      if (node.args[0]->monotone) return eval(*node.args[0], n, limits);
      if (n > limits.scan_threshold) {
        throw ScanLimitExceeded("max-prefix of a non-monotone function at argument " +
                                n.str() + " exceeds the scan threshold " +
                                std::to_string(limits.scan_threshold));
      }
      const auto upto = n.convert_to<std::uint64_t>();
      Rational best = eval(*node.args[0], Nat(0), limits);
      for (std::uint64_t i = 1; i <= upto; ++i) {
        Rational v = eval(*node.args[0], Nat(i), limits);
        if (v > best) best = std::move(v);
      }
      return best;
    }
  }
  throw InvalidArgument("unknown rate function node");
}

std::string describe(const RateFn::Node& node) {
  auto sub = [&](std::size_t i) { return describe(*node.args[i]); };
  switch (node.op) {
    case Op::constant:
      return to_string(node.value);
    case Op::variable:
      return "n";
    case Op::table: {
      std::string s = "table[";
      for (std::size_t i = 0; i < node.table.size(); ++i) {
        if (i) s += ",";
        s += node.table[i].str();
      }
      return s + "]";
    }
    case Op::add:
      return "(" + sub(0) + " + " + sub(1) + ")";
    case Op::mul:
      return sub(0) + "*" + sub(1);
    case Op::monus:
      return "(" + sub(0) + " -. " + sub(1) + ")";
    case Op::max:
      return "max(" + sub(0) + ", " + sub(1) + ")";
    case Op::ceil_div:
      return "ceil(" + sub(0) + " / " + sub(1) + ")";
    case Op::power:
      return sub(0) + "^" + sub(1);
    case Op::ceil:
      return "ceil(" + sub(0) + ")";
    case Op::isqrt_ceil:
      return "isqrt_ceil(" + sub(0) + ")";
    case Op::compose:
      return "(" + sub(0) + ") o (" + sub(1) + ")";
    case Op::max_prefix:
      return "maxprefix(" + sub(0) + ")";
  }
  return "?";
}

nlohmann::json to_json(const RateFn::Node& node) {
  nlohmann::json j;
  j["op"] = op_names().at(node.op);
  if (node.op == Op::constant) {
    j["value"] = to_string(node.value);
  } else if (node.op == Op::table) {
    auto values = nlohmann::json::array();
    for (const auto& v : node.table) values.push_back(v.str());
    j["values"] = values;
  } else if (!node.args.empty()) {
    auto args = nlohmann::json::array();
    for (const auto& a : node.args) args.push_back(to_json(*a));
    j["args"] = args;
  }
  return j;
}

Rational json_rational(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_unsigned()) return Rational(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw InvalidArgument("rate function constant must be an integer or a rational string");
}

}  // namespace

RateFn::RateFn() : RateFn(variable()) {}

RateFn::RateFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

RateFn RateFn::constant(const Rational& c) {
  if (c < 0) throw InvalidArgument("rate function constants must be nonnegative");
  auto node = std::make_shared<Node>();
  node->op = Op::constant;
  node->value = c;
  node->monotone = true;
  return RateFn(node);
}

RateFn RateFn::variable() {
  auto node = std::make_shared<Node>();
  node->op = Op::variable;
  node->monotone = true;
  return RateFn(node);
}

RateFn RateFn::table(std::vector<Nat> values) {
  if (values.empty()) throw InvalidArgument("table rate function needs at least one value");
  for (const auto& v : values) {
    if (v < 0) throw InvalidArgument("table values must be natural numbers");
  }
  auto node = std::make_shared<Node>();
  node->op = Op::table;
  node->monotone = std::is_sorted(values.begin(), values.end());
  node->table = std::move(values);
  return RateFn(node);
}

RateFn RateFn::add(const RateFn& a, const RateFn& b) {
  return RateFn(make(Op::add, {a.node_, b.node_}));
}
RateFn RateFn::mul(const RateFn& a, const RateFn& b) {
  return RateFn(make(Op::mul, {a.node_, b.node_}));
}
RateFn RateFn::monus(const RateFn& a, const RateFn& b) {
  return RateFn(make(Op::monus, {a.node_, b.node_}));
}
RateFn RateFn::max(const RateFn& a, const RateFn& b) {
  return RateFn(make(Op::max, {a.node_, b.node_}));
}
RateFn RateFn::ceil_div(const RateFn& a, const RateFn& b) {
  return RateFn(make(Op::ceil_div, {a.node_, b.node_}));
}
RateFn RateFn::power(const RateFn& base, const RateFn& exponent) {
  return RateFn(make(Op::power, {base.node_, exponent.node_}));
}
RateFn RateFn::ceil(const RateFn& a) { return RateFn(make(Op::ceil, {a.node_})); }
RateFn RateFn::isqrt_ceil(const RateFn& a) {
  return RateFn(make(Op::isqrt_ceil, {a.node_}));
}
RateFn RateFn::compose(const RateFn& outer, const RateFn& inner) {
  return RateFn(make(Op::compose, {outer.node_, inner.node_}));
}
RateFn RateFn::max_prefix(const RateFn& f) {
  if (f.monotone()) return f;
  return RateFn(make(Op::max_prefix, {f.node_}));
}

Nat RateFn::operator()(const Nat& n, const EvalLimits& limits) const {
  if (n < 0) throw InvalidArgument("rate functions are defined on naturals only");
  return require_nat(eval(*node_, n, limits), "rate function value");
}

Rational RateFn::eval_rational(const Nat& n, const EvalLimits& limits) const {
  if (n < 0) throw InvalidArgument("rate functions are defined on naturals only");
  return eval(*node_, n, limits);
}

bool RateFn::monotone() const { return node_->monotone; }
RateFn::Op RateFn::op() const { return node_->op; }

const Rational& RateFn::constant_value() const {
  if (node_->op != Op::constant) throw InvalidArgument("not a constant rate function");
  return node_->value;
}

std::string RateFn::describe() const { return ppa::describe(*node_); }

nlohmann::json RateFn::to_json() const { return ppa::to_json(*node_); }

RateFn RateFn::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
    throw InvalidArgument("rate function AST node must be an object with an 'op' string");
  }
  const auto name = j["op"].get<std::string>();
  auto it = std::find_if(op_names().begin(), op_names().end(),
                         [&](const auto& kv) { return kv.second == name; });
  if (it == op_names().end()) throw InvalidArgument("unknown rate function op '" + name + "'");
  const Op op = it->first;

  for (const auto& [key, _] : j.items()) {
    if (key != "op" && key != "value" && key != "values" && key != "args") {
      throw InvalidArgument("unknown field '" + key + "' in rate function node");
    }
  }

  switch (op) {
    case Op::constant:
      if (!j.contains("value")) throw InvalidArgument("const node needs 'value'");
      return constant(json_rational(j["value"]));
    case Op::variable:
      return variable();
    case Op::table: {
      if (!j.contains("values") || !j["values"].is_array()) {
        throw InvalidArgument("table node needs a 'values' array");
      }
      std::vector<Nat> values;
      for (const auto& v : j["values"]) {
        Rational q = json_rational(v);
        values.push_back(require_nat(q, "table value"));
      }
      return table(std::move(values));
    }
    default:
      break;
  }

  if (!j.contains("args") || !j["args"].is_array() || j["args"].size() != arity(op)) {
    throw InvalidArgument("'" + name + "' node needs exactly " +
                          std::to_string(arity(op)) + " args");
  }
  std::vector<RateFn> args;
  for (const auto& a : j["args"]) args.push_back(from_json(a));
  switch (op) {
    case Op::add: return add(args[0], args[1]);
    case Op::mul: return mul(args[0], args[1]);
    case Op::monus: return monus(args[0], args[1]);
    case Op::max: return max(args[0], args[1]);
    case Op::ceil_div: return ceil_div(args[0], args[1]);
    case Op::power: return power(args[0], args[1]);
    case Op::ceil: return ceil(args[0]);
    case Op::isqrt_ceil: return isqrt_ceil(args[0]);
    case Op::compose: return compose(args[0], args[1]);
    case Op::max_prefix: return RateFn(make(Op::max_prefix, {args[0].node_}));
    default: break;
  }
  throw InvalidArgument("unhandled rate function op '" + name + "'");
}

}  // namespace ppa
