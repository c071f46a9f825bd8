#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pea/pea.hpp"

using namespace pea;

namespace {

struct Run {
  std::string out;
  int code = -1;
};

Run peatool(const std::string& args) {
  std::string cmd = std::string(PEATOOL_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const char* name) { return std::string("'") + SAMPLES_DIR + "/" + name + "'"; }

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_line(const std::string& out, const std::string& line) {
  std::istringstream in(out);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(Cli, CheckChain) {
  auto r = peatool("check " + sample("chain4.pea") + " --props rip,rdp");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "axioms: VALID"));
  EXPECT_TRUE(has_line(r.out, "rip: HOLDS"));
  EXPECT_TRUE(has_line(r.out, "rdp: HOLDS"));
}

TEST(Cli, CheckLexS3ReportsLibraryWitness) {
  auto r = peatool("check " + sample("lex_s3.pea") + " --props rdp");
  EXPECT_EQ(r.code, 1);
  auto e = parse_pea(read(std::string(SAMPLES_DIR) + "/lex_s3.pea"));
  auto pr = check_rdp(e);
  ASSERT_FALSE(pr.holds);
  std::string w;
  for (Id x : pr.witness) w += (w.empty() ? "" : ",") + e.name(x);
  EXPECT_TRUE(has_line(r.out, "rdp: FAILS witness=" + w)) << r.out;
  EXPECT_TRUE(no_table_exists(e, {pr.witness[0], pr.witness[1], pr.witness[2], pr.witness[3]}));
}

TEST(Cli, ParseAndAxiomErrors) {
  EXPECT_EQ(peatool("check " + sample("malformed.pea")).code, 2);
  EXPECT_EQ(peatool("check /nonexistent.pea").code, 2);
  auto r = peatool("check " + sample("broken_chain4.pea"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("axioms: VIOLATION PE"), std::string::npos);
  EXPECT_EQ(peatool("check " + sample("chain4.pea") + " --props rip,foo").code, 2);
  EXPECT_EQ(peatool("check " + sample("chain4.pea") + " --bogus").code, 2);
  EXPECT_EQ(peatool("").code, 2);
  EXPECT_EQ(peatool("check").code, 2);
  EXPECT_EQ(peatool("construct Q --unit 1").code, 2);
  EXPECT_EQ(peatool("construct 'lex(Z,Z)' --unit '(1,0)' --materialize 50").code, 2);
}

TEST(Cli, ConstructMatchesSample) {
  auto r = peatool("construct 'lex(Z,finite:S3)' --unit '(3,0)' --materialize 100");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read(std::string(SAMPLES_DIR) + "/lex_s3.pea"));
  auto e = parse_pea(r.out);
  EXPECT_EQ(e.size(), 14u);
  EXPECT_TRUE(check_axioms(e).valid);
}

TEST(Cli, ConstructRoundTrip) {
  const std::vector<std::pair<const char*, const char*>> cases = {
      {"Z", "4"},
      {"Z^2:product", "(1,2)"},
      {"Z^2:cone=ex2.9", "(1,0)"},
      {"Z^2:cone=ex2.10", "(1,0)"},
      {"lex(Z,finite:S3)", "(2,0)"},
      {"lex(Z,finite:C3)", "(3,0)"},
      {"lex(Z^2:product,finite:C2)", "((1,1),0)"},
      {"finite:C4", "0"}};
  for (const auto& [d, u] : cases) {
    auto r = peatool(std::string("construct '") + d + "' --unit '" + u + "' --materialize 200");
    ASSERT_EQ(r.code, 0) << d;
    std::string path = ::testing::TempDir() + "roundtrip.pea";
    std::ofstream(path) << r.out;
    auto c = peatool("check '" + path + "' --props rip");
    EXPECT_TRUE(has_line(c.out, "axioms: VALID")) << d << "\n" << c.out;
  }
}

TEST(Cli, LiftSingleQuadruple) {
  auto r = peatool("lift 'lex(Z,Z)' '(2,-1);(1,5)=(1,2);(2,2)'");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "table: c11=(1,-1) c12=(1,0) c21=(0,3) c22=(1,2)")) << r.out;
  EXPECT_TRUE(has_line(r.out, "validated: yes"));
  EXPECT_EQ(peatool("lift 'lex(Z,Z)' '(1,0);(1,0)=(1,0);(0,0)'").code, 2);
  EXPECT_EQ(peatool("lift 'Z^2:product' '(1,0);(0,1)=(0,1);(1,0)'").code, 2);
  EXPECT_EQ(peatool("lift 'lex(Z,Z)'").code, 2);
}

TEST(Cli, LiftBatchIsDeterministic) {
  auto a = peatool("lift 'lex(Z,heis)' --batch --seed 7 --count 60 --show");
  auto b = peatool("lift 'lex(Z,heis)' --batch --seed 7 --count 60 --show");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(has_line(a.out, "# seed: 7"));
  EXPECT_TRUE(has_line(a.out, "validated: 60/60"));
  auto c = peatool("lift 'lex(Z,heis)' --batch --count 30 --route rdp1");
  EXPECT_EQ(c.code, 0);
  EXPECT_TRUE(has_line(c.out, "# seed: 42"));
  EXPECT_TRUE(has_line(c.out, "validated: 30/30"));
}

TEST(Cli, NPerfect) {
  auto r = peatool("nperfect " + sample("lex_s3.pea") + " 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "slices: 1/6/6/1"));
  EXPECT_TRUE(has_line(r.out, "E0: (0,0)"));
  auto d = peatool("nperfect " + sample("diamond.pea") + " 1");
  EXPECT_EQ(d.code, 1);
  EXPECT_TRUE(has_line(d.out, "decomposition: NotFound"));
  auto b = peatool("nperfect " + sample("chain4.pea") + " 1 --brute-force");
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(has_line(b.out, "slices: 1/3"));
  auto z = peatool("nperfect Z 2 --morphism 'matrix:[[2]]'");
  EXPECT_EQ(z.code, 0);
  EXPECT_TRUE(has_line(z.out, "image of c: (1,0)"));
  EXPECT_EQ(peatool("nperfect finite:S3 3").code, 1);
  EXPECT_EQ(peatool("nperfect Z 2 --morphism 'matrix:[[-1]]'").code, 2);
  EXPECT_EQ(peatool("nperfect nosuchthing 2").code, 2);
}

TEST(Cli, Enumerate) {
  auto two = peatool("enumerate 2");
  EXPECT_EQ(two.code, 0);
  EXPECT_TRUE(has_line(two.out, "#1 size=2 commutative=yes rip=HOLDS rdp0=HOLDS rdp=HOLDS rdp1=HOLDS rdp2=HOLDS"));
  EXPECT_TRUE(has_line(two.out, "counts: 2:1"));
  auto four = peatool("--json enumerate 4 --tables");
  auto j = nlohmann::json::parse(four.out);
  EXPECT_EQ(j["counts"]["4"], 3);
  bool has_chain = false, has_diamond = false;
  for (const auto& a : j["algebras"]) {
    if (a["size"] != 4) continue;
    std::ostringstream text;
    text << "pea v1\nelements:";
    for (const auto& n : a["pea"]["elements"]) text << " " << n.get<std::string>();
    text << "\nzero: " << a["pea"]["zero"].get<std::string>() << "\nunit: " << a["pea"]["unit"].get<std::string>() << "\n";
    for (const auto& t : a["pea"]["add"]) text << "add: " << t[0].get<std::string>() << " " << t[1].get<std::string>() << " " << t[2].get<std::string>() << "\n";
    auto e = parse_pea(text.str());
    auto canon = [](const FinitePEA& f) { return detail::canonical_table(f.table(), f.size()); };
    has_chain |= canon(e) == canon(chain(3));
    has_diamond |= canon(e) == canon(parse_pea(read(std::string(SAMPLES_DIR) + "/diamond.pea")));
  }
  EXPECT_TRUE(has_chain);
  EXPECT_TRUE(has_diamond);
  EXPECT_EQ(peatool("enumerate 7").code, 2);
}

TEST(Cli, EnumerateExitsFourOnAuditViolation) {
  // rip without rdp0 occurs from size 4 on
  auto r = peatool("enumerate 4");
  EXPECT_EQ(r.code, 4);
  EXPECT_TRUE(has_line(r.out, "audit: 1 algebras violate the implication chain"));
}

TEST(Cli, VerifyPaper) {
  auto a = peatool("verify-paper");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_TRUE(has_line(a.out, "# seed: 42"));
  EXPECT_EQ(a.out.find(": FAIL ("), std::string::npos);
  EXPECT_TRUE(has_line(a.out, "summary: 15/15 PASS"));
  EXPECT_NE(a.out.find("ex2.9 rip refutation: PASS (witness (1,0),(0,1) <= (0,3),(3,0)"), std::string::npos);
  EXPECT_NE(a.out.find("ex2.10 rip refutation: PASS (witness (1,0),(0,1) <= (0,2),(2,0)"), std::string::npos);
  EXPECT_TRUE(has_line(a.out, "lift batch lex(Z,heis): PASS (200/200 validated)"));
  EXPECT_EQ(a.out, peatool("verify-paper").out);
}

TEST(Cli, JsonMirrorsReport) {
  auto r = peatool("check " + sample("lex_s3.pea") + " --json");
  EXPECT_EQ(r.code, 1);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["exit_code"], 1);
  EXPECT_EQ(j["commutative"], false);
  ASSERT_EQ(j["properties"].size(), 5u);
  EXPECT_EQ(j["properties"][2]["property"], "rdp");
  EXPECT_EQ(j["properties"][2]["witness"].size(), 4u);
  auto l = nlohmann::json::parse(peatool("--json lift 'lex(Z,Z)' '(2,-1);(1,5)=(1,2);(2,2)'").out);
  EXPECT_EQ(l["table"]["c21"], "(0,3)");
  auto e = nlohmann::json::parse(peatool("--json check /nonexistent.pea").out);
  EXPECT_TRUE(e.contains("error"));
}
