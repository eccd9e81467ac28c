#include "partcount/instance.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

namespace partcount {

namespace {

std::uint64_t checked_sum(const std::vector<std::uint64_t>& values) {
  std::uint64_t sum = 0;
  for (std::uint64_t v : values) {
    sum += v;
    if (sum >= kSumLimit) {
      throw ParseError("sum of values must stay below 2^32");
    }
  }
  return sum;
}

// Whitespace-split tokens of a line.
std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_positive(const std::string& tok) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("not a nonnegative integer: '" + tok + "'");
  }
  if (v == 0) throw ParseError("values must be positive integers");
  return v;
}

Instance parse_plain(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> value_tokens;
  std::optional<int> constraint;
  bool have_values = false;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!have_values) {
      value_tokens = tokens;
      have_values = true;
      continue;
    }
    if (constraint) throw ParseError("unexpected extra line in plain instance");
    if (tokens.size() != 1 || tokens[0].rfind("C=", 0) != 0) {
      throw ParseError("second line must be C=<integer>");
    }
    const std::string num = tokens[0].substr(2);
    int c = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), c);
    if (ec != std::errc{} || ptr != num.data() + num.size()) {
      throw ParseError("malformed constraint: '" + tokens[0] + "'");
    }
    constraint = c;
  }
  if (!have_values) throw ParseError("empty instance");
  std::vector<std::uint64_t> values;
  values.reserve(value_tokens.size());
  for (const auto& tok : value_tokens) values.push_back(parse_positive(tok));
  return Instance(std::move(values), constraint);
}

Instance parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "a" && key != "constraint") {
      throw ParseError("unknown key '" + key + "' in instance");
    }
  }
  if (!doc.contains("a") || !doc["a"].is_array()) {
    throw ParseError("instance requires an array key \"a\"");
  }
  std::vector<std::uint64_t> values;
  for (const auto& item : doc["a"]) {
    if (!item.is_number_integer() || item.get<std::int64_t>() <= 0) {
      throw ParseError("values must be positive integers");
    }
    values.push_back(item.get<std::uint64_t>());
  }
  std::optional<int> constraint;
  if (doc.contains("constraint")) {
    if (!doc["constraint"].is_number_integer()) {
      throw ParseError("constraint must be an integer");
    }
    constraint = doc["constraint"].get<int>();
  }
  return Instance(std::move(values), constraint);
}

}  // namespace

Instance::Instance(std::vector<std::uint64_t> values, std::optional<int> constraint)
    : values_(std::move(values)), constraint_(constraint) {
  if (values_.empty()) throw ParseError("instance needs at least one value");
  if (values_.size() > static_cast<std::size_t>(kMaxSize)) {
    throw ParseError("instance size exceeds n <= 30");
  }
  for (std::uint64_t v : values_) {
    if (v == 0) throw ParseError("values must be positive integers");
  }
  checked_sum(values_);
  if (constraint_ && std::abs(*constraint_) > size()) {
    throw ParseError("|C| must not exceed n");
  }
}

DerivedParams derive_params(const Instance& inst) {
  DerivedParams out;
  out.sum = checked_sum(inst.values());
  out.delta = static_cast<int>(out.sum & 1);
  out.modulus = out.sum + out.delta + 1;
  // Smallest p with M <= 2^p; the number register always has at least one qubit.
  int p = std::bit_width(out.modulus - 1);
  out.number_qubits = p < 1 ? 1 : p;
  if (inst.constraint()) {
    out.cardinality_modulus =
        static_cast<std::uint64_t>(inst.size()) + std::abs(*inst.constraint()) + 1;
  }
  return out;
}

std::int64_t signed_sum(const Instance& inst, const SpinConfig& cfg) {
  if (cfg.spins.size() != inst.values().size()) {
    throw std::invalid_argument("spin configuration length mismatch");
  }
  std::int64_t sum = 0;
  for (std::size_t j = 0; j < cfg.spins.size(); ++j) {
    const std::int64_t v = static_cast<std::int64_t>(inst.values()[j]);
    sum += cfg.spins[j] > 0 ? v : -v;
  }
  return sum;
}

bool verify_partition(const Instance& inst, const SpinConfig& cfg) {
  const auto params = derive_params(inst);
  if (signed_sum(inst, cfg) != params.delta) return false;
  if (inst.constraint()) {
    int card = 0;
    for (auto s : cfg.spins) card += s > 0 ? 1 : -1;
    if (card != *inst.constraint()) return false;
  }
  return true;
}

Instance parse_instance(std::string_view text, InstanceFormat format) {
  if (format == InstanceFormat::kAuto) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    format = (i < text.size() && text[i] == '{') ? InstanceFormat::kJson
                                                 : InstanceFormat::kPlain;
  }
  return format == InstanceFormat::kJson ? parse_json(text) : parse_plain(text);
}

}  // namespace partcount
