#include <gtest/gtest.h>

#include <sstream>

#include <bregproj/error.hpp>
#include <bregproj/json_io.hpp>

#include "commands.hpp"

using namespace bregproj;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json result(const CliRun& r) { return parse_json(r.out, "report").at("result"); }

const std::string kHilbert = R"({"kind":"gauge","gauge":{"kind":"power","alpha":1,"beta":0.5}})";
const std::string kPlane = R"({"kind":"vector","n":2,"norm":{"family":"p","p":2}})";

}  // namespace

TEST(CliDiv, HilbertExample) {
  const CliRun r = run({"div", "--potential", kHilbert, "--space", kPlane, "--x", "1,0", "--y", "0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(result(r).at("value").get<double>(), 1.0);
  const Json rep = parse_json(r.out, "report");
  EXPECT_EQ(rep.at("version").get<std::string>(), BREGPROJ_VERSION);
  EXPECT_EQ(rep.at("spec").at("space").at("n").get<int>(), 2);
}

TEST(CliDiv, EqualPointsAndKl) {
  EXPECT_DOUBLE_EQ(result(run({"div", "--potential", kHilbert, "--space", kPlane, "--x", "1,0", "--y", "1,0"})).at("value").get<double>(), 0.0);
  const CliRun kl = run({"div", "--potential", R"({"kind":"kl"})", "--x", "1,2", "--y", "2,1"});
  ASSERT_EQ(kl.code, 0) << kl.err;
  EXPECT_NEAR(result(kl).at("value").get<double>(), 0.693147, 1e-6);
}

TEST(CliDiv, ParseErrorsExitTwo) {
  EXPECT_EQ(run({"div", "--potential", "{bad json", "--x", "1", "--y", "1"}).code, 2);
  EXPECT_EQ(run({"div", "--potential", R"({"kind":"nope"})", "--x", "1", "--y", "1"}).code, 2);
  EXPECT_EQ(run({"div", "--potential", R"({"kind":"kl"})", "--space", kPlane, "--x", "1,2,3", "--y", "1,1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliProject, KlSimplexWithCertificate) {
  const CliRun r = run({"project", "--potential", R"({"kind":"kl"})", "--set", R"({"kind":"simplex","total":1})", "--y", "2,2",
                     "--verify-pythagorean", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json res = result(r);
  EXPECT_NEAR(res.at("point")[0].get<double>(), 0.5, 1e-8);
  EXPECT_NEAR(res.at("point")[1].get<double>(), 0.5, 1e-8);
  EXPECT_LE(res.at("variational_residual").get<double>(), 1e-8);
  EXPECT_TRUE(res.at("pythagorean").at("passed").get<bool>());
}

TEST(CliProject, MemberIsFixed) {
  const CliRun r = run({"project", "--potential", R"({"kind":"kl"})", "--set", R"({"kind":"simplex","total":1})", "--y", "0.25,0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(result(r).at("iterations").get<int>(), 0);
}

TEST(CliProject, RightDualHyperplane) {
  const CliRun r = run({"project", "--potential", R"({"kind":"kl"})", "--set",
                     R"({"kind":"hyperplane","a":[1,1],"b":0,"coordinates":"dual"})", "--side", "right", "--y", "2,2",
                     "--verify-pythagorean", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(result(r).at("pythagorean").at("equality_expected").get<bool>());
}

TEST(CliProject, InfeasibleExitsThree) {
  EXPECT_EQ(run({"project", "--potential", R"({"kind":"kl"})", "--set", R"({"kind":"hyperplane","a":[1,1],"b":-1})", "--y", "2,2"}).code,
            3);
}

TEST(CliOther, ProxResolveIterateCertifyMeasure) {
  const std::string kl = R"({"kind":"kl"})";
  EXPECT_EQ(run({"prox", "--potential", kHilbert, "--f", kHilbert, "--y", "2,0"}).code, 0);
  EXPECT_EQ(run({"resolve", "--potential", kl, "--map", R"({"kind":"affine","M":[[1]],"c":[-1]})", "--x", "1"}).code, 0);
  const CliRun it = run({"iterate", "--potential", kHilbert, "--mode", "dykstra_hilbert", "--sets",
                      R"([{"kind":"halfspace","a":[1,0],"b":0},{"kind":"halfspace","a":[0,1],"b":0}])", "--y", "1,2",
                      "--format", "csv"});
  EXPECT_EQ(it.code, 0) << it.err;
  EXPECT_NE(it.out.find(','), std::string::npos);
  const CliRun tz = run({"iterate", "--potential", kHilbert, "--mode", "dykstra_hilbert", "--sets",
                      R"([{"kind":"halfspace","a":[1,0],"b":0},{"kind":"halfspace","a":[0,1],"b":0}])", "--y", "1,2",
                      "--z", "-1,-1"});
  ASSERT_EQ(tz.code, 0) << tz.err;
  const auto dz = result(tz).at("divergence_to_z");
  EXPECT_DOUBLE_EQ(dz.front().get<double>(), 6.5);
  EXPECT_NEAR(dz.back().get<double>(), 1.0, 1e-12);
  const CliRun c = run({"certify", "--potential", kl, "--operator", "project", "--set", R"({"kind":"halfspace","a":[1,1],"b":1})",
                     "--x", "1,1", "--samples", "50"});
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(run({"measure", "--what", "gradient-check", "--potential", kl, "--x", "1,2,3"}).code, 0);
}

TEST(CliVerify, QuasigaugeAndDeterminism) {
  const CliRun a = run({"verify", "quasigauge", "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, run({"verify", "quasigauge", "--seed", "7"}).out);
  EXPECT_EQ(run({"verify", "no-such-suite"}).code, 2);
}

TEST(CliVerify, IdentitiesReducedEffort) {
  const CliRun a = run({"verify", "identities", "--seed", "7", "--effort", "0.05"});
  EXPECT_EQ(a.code, 0) << a.err;
}

TEST(CliVerify, HolderCaseSelection) {
  const CliRun a = run({"verify", "holder", "--case", "hilbert-halfspace", "--effort", "0.1"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(run({"verify", "holder", "--case", "bogus"}).code, 2);
}

TEST(JsonIo, SpaceRoundTrip) {
  const Json j = parse_json(R"({"kind":"hermitian","n":3,"norm":{"family":"schatten","p":1.5}})", "space");
  const SpaceDescriptor s = space_from_json(j);
  EXPECT_EQ(space_from_json(to_json(s)), s);
}

TEST(JsonIo, MatrixPoints) {
  const SpaceDescriptor s = SpaceDescriptor::hermitian(2);
  const Vec a = point_from_text("[[1,[0,2]],[[0,-2],3]]", s);
  const CMat m = unflatten_hermitian(a, 2);
  EXPECT_NEAR(m(0, 1).imag(), 2.0, 1e-15);
  EXPECT_LT((point_from_json(point_to_json(a, s), s) - a).norm(), 1e-12);
  EXPECT_THROW(point_from_text("[[1,2],[3,4]]", s), Error);
}

TEST(JsonIo, NumbersUseTwelveDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(number(std::numeric_limits<double>::infinity()).get<std::string>(), "inf");
}
