#include "fkp/cli.hpp"

#include <sstream>
#include <utility>

#include "fkp/classifier.hpp"
#include "fkp/spec.hpp"
#include "fkp/witness.hpp"

namespace fkp::cli {

namespace {

using nlohmann::ordered_json;

ordered_json census_json(const RowCensus& census) {
  ordered_json out = ordered_json::object();
  for (const auto& [order, count] : census) out[std::to_string(order)] = count;
  return out;
}

std::string census_text(const RowCensus& census) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [order, count] : census) {
    if (!first) out << ", ";
    first = false;
    out << order << ": " << count;
  }
  out << '}';
  return out.str();
}

std::string member_text(const std::vector<std::uint64_t>& member) {
  if (member.empty()) return "F1";
  std::string out;
  for (std::uint64_t f : member) {
    if (!out.empty()) out.push_back('*');
    out += "F" + std::to_string(f);
  }
  return out;
}

ordered_json image_json(const Permutation& p) {
  ordered_json out = ordered_json::array();
  for (index_t v : p.image()) out.push_back(v);
  return out;
}

std::string image_text(const Permutation& p) {
  std::ostringstream out;
  for (index_t k = 0; k < p.size(); ++k) {
    if (k > 0) out << ' ';
    out << p(k);
  }
  return out.str();
}

ordered_json witness_json(const WitnessPair& w) {
  ordered_json out;
  out["rows"] = image_json(w.rows);
  out["cols"] = image_json(w.cols);
  out["lhs"] = w.lhs.str();
  out["rhs"] = w.rhs.str();
  out["steps"] = w.steps;
  out["verified"] = w.verified;
  return out;
}

CommandResult failure(Status status, const std::string& kind, const std::string& message) {
  CommandResult result;
  result.status = status;
  result.text = "error: " + message + "\n";
  result.payload = ordered_json{{"error", message}, {"kind", kind}};
  return result;
}

// Shared error mapping: parse problems exit 2, capacity problems exit 3.
template <typename Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const parse_error& e) {
    return failure(Status::usage, "parse", e.what());
  } catch (const capacity_error& e) {
    return failure(Status::capacity, "capacity", e.what());
  } catch (const error& e) {
    return failure(Status::usage, "invalid", e.what());
  }
}

std::size_t entry_budget(const Options& options) {
  const std::uint64_t n = options.max_n;
  return static_cast<std::size_t>(checked_mul(n, n));
}

}  // namespace

CommandResult cmd_canon(const std::string& spec_text, const Options&) {
  return guarded([&] {
    const FkpSpec spec = FkpSpec::parse(spec_text);
    const std::string canonical = canonicalize(spec).str();
    CommandResult result;
    result.text = canonical + "\n";
    result.payload = ordered_json{{"input", spec.str()}, {"canonical", canonical}};
    return result;
  });
}

CommandResult cmd_equiv(const std::string& spec_a, const std::string& spec_b,
                        const std::string& mode, const Options&) {
  return guarded([&] {
    if (mode != "p" && mode != "pd")
      return failure(Status::usage, "usage", "mode must be p or pd");
    const FkpSpec a = FkpSpec::parse(spec_a);
    const FkpSpec b = FkpSpec::parse(spec_b);
    const bool eq = mode == "pd" ? pd_equivalent(a, b) : p_equivalent(a, b);
    const RowCensus census_a = census_formula(a);
    const RowCensus census_b = census_formula(b);

    CommandResult result;
    result.status = eq ? Status::ok : Status::inequivalent;
    std::ostringstream text;
    text << (eq ? "equivalent" : "inequivalent") << "\n"
         << "lhs census: " << census_text(census_a) << "\n"
         << "rhs census: " << census_text(census_b) << "\n";
    result.text = text.str();
    result.payload = ordered_json{{"mode", mode},
                                  {"lhs", a.str()},
                                  {"rhs", b.str()},
                                  {"equivalent", eq},
                                  {"lhs_census", census_json(census_a)},
                                  {"rhs_census", census_json(census_b)}};
    return result;
  });
}

CommandResult cmd_census(const std::string& spec_text, bool check_oracle,
                         const Options& options) {
  return guarded([&] {
    const FkpSpec spec = FkpSpec::parse(spec_text);
    const RowCensus formula = census_formula(spec);

    CommandResult result;
    std::ostringstream text;
    text << "census: " << census_text(formula) << "\n";
    result.payload = ordered_json{{"spec", spec.str()}, {"census", census_json(formula)}};
    if (check_oracle) {
      const RowCensus oracle = census_oracle(build(spec, entry_budget(options)));
      const bool agreement = oracle == formula;
      text << "oracle: " << census_text(oracle) << "\n"
           << "agreement: " << (agreement ? "true" : "false") << "\n";
      result.payload["oracle"] = census_json(oracle);
      result.payload["agreement"] = agreement;
    }
    result.text = text.str();
    return result;
  });
}

CommandResult cmd_witness(const std::string& spec_a, const std::string& spec_b,
                          bool verify, const Options& options) {
  return guarded([&] {
    const FkpSpec a = FkpSpec::parse(spec_a);
    const FkpSpec b = FkpSpec::parse(spec_b);

    CommandResult result;
    WitnessPair w = identity_witness(a);
    try {
      w = witness_equivalence(a, b, /*verify=*/false, entry_budget(options));
    } catch (const inequivalent_error& e) {
      result.status = Status::inequivalent;
      std::ostringstream text;
      text << "inequivalent: " << e.what() << "\n"
           << "lhs census: " << census_text(e.lhs_census()) << "\n"
           << "rhs census: " << census_text(e.rhs_census()) << "\n";
      result.text = text.str();
      result.payload = ordered_json{{"equivalent", false},
                                    {"error", e.what()},
                                    {"lhs_census", census_json(e.lhs_census())},
                                    {"rhs_census", census_json(e.rhs_census())}};
      return result;
    }

    std::string note;
    if (!verify) {
      note = "not checked: verification disabled";
    } else {
      try {
        if (!verify_witness(w, entry_budget(options)))
          return failure(Status::usage, "internal", "witness failed exact verification");
      } catch (const capacity_error& e) {
        result.status = Status::capacity;
        note = std::string("not checked: ") + e.what();
      }
    }

    result.payload = witness_json(w);
    if (!note.empty()) result.payload["note"] = note;
    std::ostringstream text;
    text << "lhs: " << w.lhs.str() << "\n"
         << "rhs: " << w.rhs.str() << "\n"
         << "rows: " << image_text(w.rows) << "\n"
         << "cols: " << image_text(w.cols) << "\n";
    for (const std::string& step : w.steps) text << "step: " << step << "\n";
    text << "verified: " << (w.verified ? "true" : "false") << "\n";
    if (!note.empty()) text << "note: " << note << "\n";
    result.text = text.str();
    return result;
  });
}

CommandResult cmd_classes(std::uint64_t n, bool members, const Options&) {
  return guarded([&] {
    if (n == 0) return failure(Status::usage, "usage", "N must be positive");
    if (n > (std::uint64_t{1} << 32))
      return failure(Status::capacity, "capacity", "N exceeds the class enumeration cap");
    const std::uint64_t count = class_count(n);
    const std::vector<EquivalenceClass> classes = enumerate_classes(n);

    CommandResult result;
    std::ostringstream text;
    text << "N=" << n << ": " << count << (count == 1 ? " class" : " classes") << "\n";
    ordered_json class_list = ordered_json::array();
    for (std::size_t k = 0; k < classes.size(); ++k) {
      const EquivalenceClass& cls = classes[k];
      text << (k + 1) << ": " << cls.form.str() << "\n";
      ordered_json entry{{"representative", cls.form.str()}};
      if (members) {
        ordered_json member_list = ordered_json::array();
        for (const auto& member : cls.members) {
          text << "   " << member_text(member) << "\n";
          member_list.push_back(member_text(member));
        }
        entry["members"] = member_list;
      }
      class_list.push_back(std::move(entry));
    }
    result.text = text.str();
    result.payload =
        ordered_json{{"n", n}, {"count", count}, {"classes", std::move(class_list)}};
    return result;
  });
}

CommandResult cmd_oracle(const std::string& spec_a, const std::string& spec_b,
                         const Options& options) {
  return guarded([&] {
    const FkpSpec a = FkpSpec::parse(spec_a);
    const FkpSpec b = FkpSpec::parse(spec_b);
    if (a.product() > options.oracle_cap || b.product() > options.oracle_cap)
      return failure(Status::capacity, "capacity", "size exceeds the oracle cap");

    const std::size_t budget = static_cast<std::size_t>(
        checked_mul(options.oracle_cap, options.oracle_cap));
    const auto found =
        brute_force_equiv(build(a, budget), build(b, budget), options.oracle_cap);
    const bool claimed = p_equivalent(a, b);
    if (found.has_value() != claimed)
      throw std::logic_error("exhaustive search and classifier disagree");

    CommandResult result;
    result.status = claimed ? Status::ok : Status::inequivalent;
    std::ostringstream text;
    text << "oracle: " << (found ? "equivalent" : "inequivalent") << "\n"
         << "classifier: " << (claimed ? "equivalent" : "inequivalent") << "\n"
         << "agreement: true\n";
    result.payload = ordered_json{{"lhs", a.str()},
                                  {"rhs", b.str()},
                                  {"oracle", found ? "equivalent" : "inequivalent"},
                                  {"classifier", claimed ? "equivalent" : "inequivalent"},
                                  {"agreement", true}};
    if (found) {
      // brute_force_equiv checks its own output by exact comparison.
      text << "witness rows: " << image_text(found->first) << "\n"
           << "witness cols: " << image_text(found->second) << "\n";
      result.payload["witness"] = ordered_json{{"rows", image_json(found->first)},
                                               {"cols", image_json(found->second)},
                                               {"verified", true}};
    }
    result.text = text.str();
    return result;
  });
}

}  // namespace fkp::cli
