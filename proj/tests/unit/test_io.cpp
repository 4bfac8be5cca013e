#include <catch_amalgamated.hpp>

#include "lexcat/instances.hpp"
#include "lexcat/io/bundle.hpp"
#include "lexcat/io/report.hpp"
#include "lexcat/presheaves/embed.hpp"

#include <fstream>

using namespace lexcat;
using io::Json;

namespace {

std::string data(const std::string& name) { return std::string(LEXCAT_SOURCE_DIR) + "/tests/data/" + name; }

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  return std::any_of(lines.begin(), lines.end(), [&](const auto& l) { return l.find(needle) != std::string::npos; });
}

std::string malformed_message(const std::string& text) {
  try {
    io::parse_bundle(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::malformed);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sample bundles load and check", "[io]") {
  const auto b = io::load_bundle(data("finset.json"));
  CHECK(b.sets.at("X").labels.size() == 3);
  CHECK(b.functions.at("f").table == std::vector<std::uint32_t>{0, 0, 1});
  REQUIRE(b.groupoids.at("partition").over_sets.has_value());
  CHECK(b.relations.at("R").pairs.size() == 2);
  CHECK(io::check_bundle(b).ok());

  const auto c = io::load_bundle(data("chain.json"));
  CHECK(c.sum_objects.at("W1").second.size() == 4);
  CHECK(c.presheaves.at("P").presheaf.values == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(io::check_bundle(c).ok());
}

TEST_CASE("a broken composition entry names its triple", "[io]") {
  const auto rep = io::check_bundle(io::load_bundle(data("broken_compose.json")));
  CHECK_FALSE(rep.ok());
  CHECK(mentions(rep.violations, "associativity fails at triple (r, r, r)"));
}

TEST_CASE("malformed bundles report where", "[io]") {
  std::ifstream in(data("truncated.json"));
  const std::string truncated((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(malformed_message(truncated).find("parse error at line") != std::string::npos);
  CHECK(malformed_message("[1, 2]").find("top level") != std::string::npos);
  CHECK(malformed_message(R"({"sets": {"X": ["a"]}, "functions": {"f": {"src": "X", "tgt": "Z", "map": {}}}})")
            .find("functions.f.tgt: unknown set 'Z'") != std::string::npos);
  CHECK(malformed_message(R"({"categories": {"T": {"builtin": "terminal"}},
                              "presheaves": {"P": {"category": "T", "values": {"*": ["x"]}, "actions": {"id": {}}}}})")
            .find("presheaves.P.actions.id") != std::string::npos);
  CHECK(malformed_message(R"({"categories": {"T": {"builtin": "nope"}}})").find("unknown builtin") != std::string::npos);
}

TEST_CASE("groupoids with Kan witnesses round-trip", "[io]") {
  const auto t = tabulate::poset(FinPoset::chain(3), "chain3");
  const SumsTab s(t);
  const auto grid = instances::labelled_two_groupoids(s, 3, 12);
  Json doc;
  doc["categories"]["C"] = Json{{"builtin", "chain"}, {"n", 3}};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto kan = check_kan(s, grid[k]);
    REQUIRE(kan.ok());
    io::put_groupoid(doc, s, "C", "G" + std::to_string(k), grid[k], kan.witness);
  }
  const auto b = io::parse_bundle(doc.dump());
  const auto rep = io::check_bundle(b);
  CHECK(rep.ok());
  CHECK(mentions(rep.lines, "Kan witness revalidated"));
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(*b.groupoids.at("G" + std::to_string(k)).over_sums == grid[k]);

  // a tampered section no longer splits its horn
  auto bad = doc;
  bool tampered = false;
  for (auto& [name, g] : bad["groupoids"].items()) {
    auto& comps = g["kan"]["s1"]["index"];
    if (tampered || comps.size() < 2) continue;
    for (std::size_t k = 0; k < comps.size() && !tampered; ++k) {
      auto alt = bad;
      alt["groupoids"][name]["kan"]["s1"]["index"][k] = (comps[k].get<std::uint32_t>() + 1) % 2;
      try {
        if (!io::check_bundle(io::parse_bundle(alt.dump())).ok()) tampered = true;
      } catch (const Error&) {
      }
    }
  }
  CHECK(tampered);
}

TEST_CASE("finite-set groupoids and presheaves round-trip", "[io]") {
  const FinSet fs;
  Json doc;
  for (const auto& a : instances::small_two_groupoids(3)) {
    const auto name = "G" + std::to_string(doc.contains("groupoids") ? doc["groupoids"].size() : 0);
    io::put_groupoid(doc, name, a, check_kan(fs, a).witness);
  }
  const auto t = tabulate::poset(FinPoset::chain(3), "chain3");
  const Psh psh(t);
  const auto all = psh.enumerate(1);
  doc["categories"]["C"] = Json{{"builtin", "chain"}, {"n", 3}};
  for (std::size_t k = 0; k < all.size(); ++k) io::put_presheaf(doc, t, "C", "P" + std::to_string(k), all[k]);
  const auto b = io::parse_bundle(doc.dump());
  CHECK(io::check_bundle(b).ok());
  for (std::size_t k = 0; k < all.size(); ++k) CHECK(b.presheaves.at("P" + std::to_string(k)).presheaf == all[k]);
  CHECK(b.groupoids.size() == instances::small_two_groupoids(3).size());
}

TEST_CASE("report lines are sorted and quoted", "[io]") {
  AuditReport rep;
  rep.add({"s", "b", "z", Verdict::pass, 2, "", "g"});
  rep.add({"s", "a", "y", Verdict::fail, 1, "say \"no\"", "g"});
  const auto text = io::format_report(rep);
  CHECK(text ==
        "suite=s instance=a clause=y verdict=fail cells=1 grid=\"g\" witness=\"say \\\"no\\\"\"\n"
        "suite=s instance=b clause=z verdict=pass cells=2 grid=\"g\" witness=\"\"\n");
  CHECK(io::exit_code(rep) == 1);
  AuditReport skip;
  skip.add({"s", "a", "y", Verdict::skipped, 0, "why", ""});
  CHECK(io::exit_code(skip) == 3);
  CHECK(io::exit_code(Error(ErrorCode::malformed, "x")) == 2);
  CHECK(io::exit_code(Error(ErrorCode::no_pullback, "x")) == 3);
}
