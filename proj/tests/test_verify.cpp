#include <set>

#include <gtest/gtest.h>

#include "radialqc/verify.hpp"

namespace radialqc {
namespace {

TEST(Verify, DefaultConfigPasses) {
  const auto checks = run_verification(VerifyConfig{});
  std::set<std::string> modules;
  for (const auto& c : checks) {
    EXPECT_TRUE(c.pass) << c.module << "/" << c.name << " measured " << c.measured;
    modules.insert(c.module);
  }
  EXPECT_EQ(modules, (std::set<std::string>{"powermap", "zoom", "uqrmap", "distortion"}));
}

TEST(Verify, OtherParametersPass) {
  for (const auto& cfg : {VerifyConfig{1.1, 4, 2000}, VerifyConfig{5.0, 3, 2000}, VerifyConfig{2.0, 2, 10}}) {
    for (const auto& c : run_verification(cfg)) {
      EXPECT_TRUE(c.pass) << "K=" << cfg.K << " " << c.module << "/" << c.name << " " << c.measured;
    }
  }
}

TEST(Verify, TolerancesBelowRoundoffFail) {
  VerifyConfig cfg;
  cfg.tol = 1e-15;
  int failed = 0;
  for (const auto& c : run_verification(cfg)) failed += c.pass ? 0 : 1;
  EXPECT_GT(failed, 0);
}

TEST(Verify, Deterministic) {
  VerifyConfig cfg;
  cfg.depth = 500;
  const auto a = run_verification(cfg), b = run_verification(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, b[i].name);
    EXPECT_EQ(a[i].measured, b[i].measured);
  }
}

}  // namespace
}  // namespace radialqc
