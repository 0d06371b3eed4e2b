#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;  // stdout followed by stderr
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(GYSIN_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(GYSIN_SAMPLES_DIR) + "/" + name; }

bool has(const std::string& out, const std::string& needle) { return out.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, GwTable) {
  const CliRun r = run("gw-table --p 3 --max-degree 6");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "e=2: j!(⟨1⟩)=⟨1⟩+⟨g⟩ OK")) << r.out;
  EXPECT_TRUE(has(r.out, "e=1: j*(⟨g⟩)=⟨h⟩ OK")) << r.out;
  EXPECT_FALSE(has(r.out, "FAIL"));
}

TEST(Cli, Euler) {
  const CliRun r = run("euler --p 5 --max-e 12");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "e=2: χ=2⟨1⟩+α OK")) << r.out;
  EXPECT_TRUE(has(r.out, "E_3=3E_1 OK")) << r.out;
}

TEST(Cli, AsciiFallbacks) {
  EXPECT_TRUE(has(run("--ascii gw-table --p 3 --max-degree 2").out, "e=2: j!(<1>)=<1>+<g> OK"));
  EXPECT_TRUE(has(run("euler --p 3 --max-e 2 --ascii").out, "e=2: chi=2<1>+alpha OK"));
  const CliRun r = run("eval --ascii --env " + sample("c2_real.json") + " --functor gw-real --expr \"I(pi)*R(pi)\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "1 + sigma")) << r.out;
}

TEST(Cli, Repro) {
  for (const char* ex : {"real", "z8", "burnside-c2", "recon-ab"}) {
    const CliRun r = run(std::string("repro ") + ex);
    EXPECT_EQ(r.code, 0) << ex << "\n" << r.out;
    EXPECT_FALSE(has(r.out, "FAIL")) << ex;
  }
  EXPECT_TRUE(has(run("repro real").out, "Rπ∘Iπ = ⟨1⟩+⟨−1⟩ OK"));
  EXPECT_TRUE(has(run("repro recon-ab").out, "50 random matrix-model composition checks OK"));
}

TEST(Cli, EvalAndNormalize) {
  CliRun r = run("eval --env " + sample("c2_real.json") + " --functor gw-real --expr \"I(pi)*R(pi)\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out, "1 + σ\n");
  r = run("normalize --env " + sample("c2_burnside.json") + " --expr \"I(pi)*R(pi)\"");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "R(")) << r.out;
  EXPECT_TRUE(has(r.out, "I(")) << r.out;
}

TEST(Cli, JsonIsOneDocumentPerLine) {
  for (const std::string& args : std::vector<std::string>{"--json gw-table --p 3 --max-degree 3", "--json repro burnside-c2",
                                 "--json normalize --env " + sample("z8_gw.json") + " --functor gw --expr \"R(pi_1)*I(pi_1)\"",
                                 "--json verify --functor burnside --group Z/2 --iters 5"}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
    std::size_t start = 0, lines = 0;
    while (start < r.out.size()) {
      const std::size_t end = r.out.find('\n', start);
      ASSERT_NE(end, std::string::npos);
      EXPECT_TRUE(nlohmann::json::accept(r.out.substr(start, end - start))) << args;
      start = end + 1;
      ++lines;
    }
    EXPECT_EQ(lines, 1u) << args;
  }
}

TEST(Cli, NormalizeJsonReportsSoundness) {
  const CliRun r = run("--json normalize --env " + sample("c2_burnside.json") + " --expr \"I(pi)*R(pi)+R(s)*I(s)\"");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("sound").get<bool>());
  EXPECT_EQ(j.at("value").at("functor"), "burnside");
  EXPECT_TRUE(j.at("normal_form").contains("terms"));
}

TEST(Cli, Verify) {
  CliRun r = run("verify --functor gw --group Z/8 --p 3 --iters 10 --seed 5");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(has(r.out, "seed 5")) << r.out;
  EXPECT_TRUE(has(r.out, "projection-formula")) << r.out;
  EXPECT_TRUE(has(r.out, "beck-chevalley")) << r.out;
  EXPECT_EQ(run("verify --functor gw-real --group Z/3").code, 64);
  EXPECT_EQ(run("verify --functor nope --group Z/2").code, 64);
  EXPECT_EQ(run("verify --functor burnside --group Q8").code, 64);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 64);
  EXPECT_EQ(run("gw-table").code, 64);
  EXPECT_EQ(run("gw-table --p 2").code, 64);
  EXPECT_EQ(run("gw-table --p 9").code, 64);
  EXPECT_EQ(run("repro nothing").code, 64);
  EXPECT_EQ(run("frobnicate").code, 64);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DataErrors) {
  CliRun r = run("eval --env " + sample("c2_burnside.json") + " --expr \"R(\"");
  EXPECT_EQ(r.code, 65);
  EXPECT_TRUE(has(r.out, "^")) << r.out;
  r = run("eval --env " + sample("c2_burnside.json") + " --expr \"R(nope)\"");
  EXPECT_EQ(r.code, 65);
  EXPECT_TRUE(has(r.out, "nope")) << r.out;
  r = run("eval --env " + sample("c2_burnside.json") + " --expr \"R(pi)*R(pi)\"");
  EXPECT_EQ(r.code, 65) << r.out;
  EXPECT_EQ(run("eval --env /nonexistent.json --expr \"R(pi)\"").code, 65);
  EXPECT_EQ(run("eval --env " + std::string(GYSIN_CLI_PATH) + " --expr \"R(pi)\"").code, 65);
  // The real-closed sample cannot be read by the finite-field functor.
  EXPECT_EQ(run("eval --functor gw --env " + sample("c2_real.json") + " --expr \"R(pi)\"").code, 65);
}
