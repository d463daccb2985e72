#include "plate/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace plate;

namespace {

SharpnessReport synthetic(Problem pr)
{
  SharpnessReport r;
  r.problem = pr;
  r.psi = StarDomain(0, {0, 0, 0, 1}, {});
  r.tau = 1.0;
  r.lambda2_ball = 3.9530150557256002;
  r.eps_list = {0.02, 0.04, 0.08};
  for (double e : r.eps_list) {
    SharpnessRecord x;
    x.eps = e;
    x.area_gap = M_PI / 2 * e * e;
    x.asymmetry = 4 / M_PI * e;
    x.tone_gap = 11.4 * e * e;
    x.tone = r.lambda2_ball - x.tone_gap;
    x.tone_gap_over_eps2 = 11.4;
    x.used_in_fit = true;
    x.trial_bound = x.tone + 0.01;
    x.ball_same_area = r.lambda2_ball;
    x.chain_ordered = true;
    r.records.push_back(x);
  }
  r.slope = 2.0;
  r.r3 = 11.4;
  r.r4 = 11.4;
  r.coarse_constant = 1.0;
  return r;
}

std::string slurp(std::filesystem::path const &p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST(Report, DocumentCarriesTheSchema)
{
  nlohmann::json const d = document("ball-tone", report_json(solve_ball_params(2, 1.0)));
  EXPECT_EQ(d.at("schema"), "plate-tone/1");
  EXPECT_EQ(d.at("command"), "ball-tone");
  EXPECT_EQ(d.at("result").at("N"), 2);
  EXPECT_NEAR(d.at("result").at("lambda2").get<double>(), 3.9530150557256002, 1e-12);
  // 17 significant digits survive the text round trip
  double const a = solve_ball_params(2, 1.0).a;
  EXPECT_EQ(nlohmann::json::parse(d.dump()).at("result").at("a").get<double>(), a);
}

TEST(Report, LemmaPropertiesAreListedInOrder)
{
  nlohmann::json const j = report_json(check_lemma(make_profile(2, 1.0)));
  ASSERT_EQ(j.at("properties").size(), 8u);
  EXPECT_EQ(j.at("properties")[0].at("property"), "i");
  EXPECT_EQ(j.at("properties")[7].at("property"), "viii");
  EXPECT_TRUE(j.at("all").get<bool>());
}

TEST(Report, SharpnessJsonFields)
{
  nlohmann::json const n = report_json(synthetic(Problem::Neumann));
  EXPECT_EQ(n.at("records").size(), 3u);
  EXPECT_TRUE(n.at("records")[0].contains("chain_ordered"));
  EXPECT_TRUE(n.contains("coarse_constant"));
  EXPECT_EQ(n.at("r_constants").at("r3"), 11.4);
  nlohmann::json const s = report_json(synthetic(Problem::Steklov));
  EXPECT_FALSE(s.at("records")[0].contains("chain_ordered"));
  EXPECT_FALSE(s.contains("coarse_constant"));
}

TEST(Report, CsvHeaderAndRows)
{
  std::string const csv = sharpness_csv(synthetic(Problem::Neumann));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "eps,area_gap,asymmetry,tone,tone_gap,tone_gap_over_eps2");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
  }
  EXPECT_EQ(rows, 3);
  EXPECT_NE(csv.find("0.02,"), std::string::npos);
}

TEST(Report, SvgIsBalanced)
{
  std::string const svg = sharpness_svg(synthetic(Problem::Neumann));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t circles = 0;
  for (std::size_t p = svg.find("<circle"); p != std::string::npos; p = svg.find("<circle", p + 1)) {
    ++circles;
  }
  EXPECT_EQ(circles, 3u);
  EXPECT_NE(svg.find("slope 2.00"), std::string::npos);
}

TEST(Report, AtomicWrite)
{
  namespace fs = std::filesystem;
  fs::path const dir = fs::temp_directory_path() / "plate_report_test";
  fs::create_directories(dir);
  fs::path const f = dir / "out.json";
  write_file_atomic(f.string(), "first");
  write_file_atomic(f.string(), "second");
  EXPECT_EQ(slurp(f), "second");
  EXPECT_FALSE(fs::exists(dir / "out.json.tmp"));
  EXPECT_THROW(write_file_atomic((dir / "missing" / "x.json").string(), "x"), Error);
  fs::remove_all(dir);
}
