#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "carta/darboux.hpp"
#include "carta/jobs.hpp"

using namespace carta;
namespace fs = std::filesystem;

namespace {

const std::string kCli = CARTA_CLI_PATH;
const std::string kFixtures = CARTA_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("carta_jobs_" + std::to_string(getpid()) + "_" + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // Runs the CLI; stdout lands in `output_`, the exit status is returned.
  int run(const std::string& args) {
    const std::string out = path("stdout.txt");
    const int status = std::system((kCli + " " + args + " > " + out + " 2> " + path("stderr.txt")).c_str());
    output_ = slurp(out);
    errors_ = slurp(path("stderr.txt"));
    fs::remove(out);
    fs::remove(path("stderr.txt"));
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  bool empty_dir() const { return fs::is_empty(dir_); }

  fs::path dir_;
  std::string output_, errors_;
};

std::vector<double> attribute_values(const std::string& text, const std::string& element, const std::string& attr) {
  std::vector<double> out;
  const std::regex re("<" + element + "[^>]*" + attr + "=\"([^\"]+)\"");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back(std::stod((*it)[1].str()));
  return out;
}

}  // namespace

TEST(FormatNumber, FixedSignificantDigits) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1.5), "1.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Validate, RejectsBadParameters) {
  JobConfig c;
  c.subcommand = "graticule";
  c.exponents = {3.0};
  try {
    validate(c);
    FAIL();
  } catch (const JobFailure& e) {
    EXPECT_EQ(e.code(), kExitConfig);
  }
  c.exponents = {0.5, 1.0};
  EXPECT_THROW(validate(c), JobFailure);
  c.subcommand = "chebyshev";
  c.region = fixture("france.geojson");
  EXPECT_NO_THROW(validate(c));
  c.eccentricity = 0.08;
  EXPECT_THROW(validate(c), JobFailure);
}

TEST_F(CliTest, StereographicBandHasConcentricParallels) {
  ASSERT_EQ(run("project --exponent 1 --region " + fixture("equatorial_band.geojson") + " --out " + path("b.geojson") +
                " --svg " + path("b.svg")),
            0)
      << errors_;
  const std::string svg = slurp(path("b.svg"));
  const std::regex parallel("<circle id=\"[^\"]+\" class=\"parallel\" cx=\"([^\"]+)\" cy=\"([^\"]+)\"");
  int count = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), parallel); it != std::sregex_iterator(); ++it) {
    EXPECT_LT(std::abs(std::stod((*it)[1].str())), 1e-10);
    EXPECT_LT(std::abs(std::stod((*it)[2].str())), 1e-10);
    ++count;
  }
  EXPECT_EQ(count, 17);
  EXPECT_EQ(svg.find("<polyline points=\"") != std::string::npos, true);  // the band outline
  EXPECT_NE(slurp(path("b.geojson")).find("\"FeatureCollection\""), std::string::npos);
}

TEST_F(CliTest, HalfExponentWorldResiduals) {
  ASSERT_EQ(run("project --exponent 0.5 --region " + fixture("world.geojson") + " --svg " + path("w.svg")), 0)
      << errors_;
  const std::string svg = slurp(path("w.svg"));
  const std::string graticule = svg.substr(0, svg.find("</g>"));
  EXPECT_EQ(graticule.find("<polyline"), std::string::npos);
  std::vector<double> r = attribute_values(graticule, "circle", "data-relative-residual");
  const std::vector<double> lines = attribute_values(graticule, "line", "data-relative-residual");
  r.insert(r.end(), lines.begin(), lines.end());
  EXPECT_EQ(r.size(), 17u + 36u);
  for (double v : r) EXPECT_LT(v, 1e-9);
  EXPECT_NE(svg.find("(pass)"), std::string::npos);
}

TEST_F(CliTest, MalformedInputWritesNothing) {
  EXPECT_EQ(run("project --region " + fixture("malformed.geojson") + " --out " + path("o.geojson") + " --svg " +
                path("o.svg") + " --report " + path("o.txt")),
            3);
  EXPECT_TRUE(empty_dir());
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_EQ(run("graticule --exponent 2.5 --svg " + path("g.svg")), 2);
  EXPECT_EQ(run("graticule --no-such-flag"), 2);
  EXPECT_EQ(run("project --inversion-pole 1 --region " + fixture("france.geojson")), 2);
  EXPECT_EQ(run("chebyshev --region " + fixture("tiny_square.geojson") + " --out " + path("t.geojson")), 2);
  EXPECT_NE(errors_.find("RegionTooSmall"), std::string::npos);
  EXPECT_TRUE(empty_dir());
}

TEST_F(CliTest, DomainError) {
  std::ofstream(path("pole.geojson")) << R"({"type": "Point", "coordinates": [0, 90]})";
  EXPECT_EQ(run("project --region " + path("pole.geojson") + " --out " + path("p.geojson")), 4);
  EXPECT_NE(errors_.find("[0, 90]"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("p.geojson")));
}

TEST_F(CliTest, ConvergenceFailure) {
  EXPECT_EQ(run("chebyshev --region " + fixture("france.geojson") + " --max-iterations 4 --report " + path("r.txt")),
            5);
  EXPECT_TRUE(empty_dir());
}

TEST_F(CliTest, CapVerdicts) {
  ASSERT_EQ(run("chebyshev --exponent 1 --exponent 0.5 --region " + fixture("south_cap_30.geojson") + " --out " +
                path("u.geojson")),
            0)
      << errors_;
  EXPECT_NE(output_.find("ratio_optimal: 1.07179"), std::string::npos) << output_;
  const auto first = output_.find("verdict: ");
  ASSERT_NE(first, std::string::npos);
  EXPECT_EQ(output_.compare(first, 35, "verdict: optimal-matches-projection"), 0);
  const auto second = output_.find("verdict: ", first + 1);
  ASSERT_NE(second, std::string::npos);
  EXPECT_EQ(output_.compare(second, 30, "verdict: projection-suboptimal"), 0);
  const std::string u = slurp(path("u.geojson"));
  EXPECT_NE(u.find("\"u\": "), std::string::npos);
}

TEST_F(CliTest, FranceOblique) {
  ASSERT_EQ(run("chebyshev --region " + fixture("france.geojson") + " --aspect-center 46,2"), 0) << errors_;
  EXPECT_NE(output_.find("aspect center"), std::string::npos);
  EXPECT_EQ(output_.find("optimality-violated"), std::string::npos);
}

TEST_F(CliTest, DistortionReport) {
  ASSERT_EQ(run("distortion --exponent 0.7 --region " + fixture("small_square.geojson") + " --delta-deg 0.1 --out " +
                path("d.geojson") + " --report " + path("d.txt")),
            0)
      << errors_;
  EXPECT_EQ(slurp(path("d.txt")), output_);
  const std::string d = slurp(path("d.geojson"));
  EXPECT_NE(d.find("\"m\": "), std::string::npos);
  EXPECT_NE(d.find("\"conformality_defect\": "), std::string::npos);
}

TEST_F(CliTest, GraticuleVerdict) {
  ASSERT_EQ(run("graticule --exponent 0.5 --inversion-pole 2,0 --inversion-power 1 --lat-step 20 --lon-step 20"), 0)
      << errors_;
  EXPECT_NE(output_.find("verdict: all curves are circles or lines"), std::string::npos) << output_;
}

TEST_F(CliTest, DarbouxSynthesizedPair) {
  const Triangle src({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  const Inversion j({2.0, 2.0}, 1.5);
  std::ostringstream target;
  target.precision(17);
  for (std::size_t i = 0; i < 3; ++i) {
    const PlanePoint q = invert_point(j, src.vertices()[i]);
    target << (i ? "," : "") << q.x << "," << q.y;
  }
  ASSERT_EQ(run("darboux --source 0,0,1,0,0,1 --target " + target.str()), 0) << errors_;
  EXPECT_NE(output_.find("inversions: "), std::string::npos) << output_;
  const std::regex err("side_error=([^\\s]+)");
  int n = 0;
  for (auto it = std::sregex_iterator(output_.begin(), output_.end(), err); it != std::sregex_iterator(); ++it, ++n)
    EXPECT_LT(std::stod((*it)[1].str()), 1e-9);
  EXPECT_GE(n, 1);
}

TEST_F(CliTest, DarbouxCollinearSource) {
  EXPECT_EQ(run("darboux --source 0,0,1,1,2,2 --target 0,0,1,0,0,1"), 6);
}

TEST_F(CliTest, DeterministicOutputs) {
  const std::string args = "chebyshev --exponent 1 --region " + fixture("france.geojson") + " --delta-deg 0.5";
  ASSERT_EQ(run(args + " --out " + path("a.geojson") + " --report " + path("a.txt")), 0);
  ASSERT_EQ(run(args + " --out " + path("b.geojson") + " --report " + path("b.txt")), 0);
  EXPECT_EQ(slurp(path("a.geojson")), slurp(path("b.geojson")));
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
}
