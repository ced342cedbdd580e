#include "fkp/spec.hpp"

#include <cctype>
#include <charconv>

namespace fkp {

FkpSpec::FkpSpec(std::vector<std::uint64_t> factors) {
  for (std::uint64_t f : factors) {
    if (f == 0) throw parse_error("factor must be positive");
    if (f > 1) factors_.push_back(f);
  }
  if (factors_.empty()) throw parse_error("empty product");
}

FkpSpec FkpSpec::parse(std::string_view text) {
  std::vector<std::string> tokens(1);
  for (std::size_t k = 0; k < text.size(); ++k) {
    const unsigned char c = text[k];
    if (std::isspace(c)) continue;
    if (c == '*' || c == ',' || c == 'x') {
      tokens.emplace_back();
      continue;
    }
    if (c == 0xE2) {  // UTF-8 tensor sign, 3 bytes
      if (k + 2 < text.size() && static_cast<unsigned char>(text[k + 1]) == 0x8A &&
          static_cast<unsigned char>(text[k + 2]) == 0x97) {
        k += 2;
        tokens.emplace_back();
        continue;
      }
      throw parse_error("unexpected character in spec");
    }
    tokens.back().push_back(static_cast<char>(c));
  }

  std::vector<std::uint64_t> factors;
  for (const std::string& token : tokens) {
    std::string_view digits = token;
    if (!digits.empty() && digits.front() == 'F') digits.remove_prefix(1);
    if (digits.empty()) throw parse_error("empty factor in spec");
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec == std::errc::result_out_of_range) throw parse_error("factor out of range");
    if (ec != std::errc{} || ptr != digits.data() + digits.size())
      throw parse_error("factor is not a number: '" + token + "'");
    factors.push_back(value);
  }
  return FkpSpec(std::move(factors));
}

std::uint64_t FkpSpec::product() const {
  std::uint64_t n = 1;
  for (std::uint64_t f : factors_) n = checked_mul(n, f);
  return n;
}

std::string FkpSpec::str() const {
  std::string out;
  for (std::uint64_t f : factors_) {
    if (!out.empty()) out.push_back('*');
    out.push_back('F');
    out += std::to_string(f);
  }
  return out;
}

PhaseExpMatrix build(const FkpSpec& spec, std::size_t max_entries) {
  PhaseExpMatrix out = fourier(static_cast<index_t>(spec.factors().front()), max_entries);
  for (std::size_t k = 1; k < spec.factor_count(); ++k)
    out = kron(out, fourier(static_cast<index_t>(spec.factors()[k]), max_entries), max_entries);
  return out;
}

}  // namespace fkp
