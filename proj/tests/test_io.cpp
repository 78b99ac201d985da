#include <gtest/gtest.h>

#include "ghzclass/io.hpp"

using namespace ghzclass;

namespace {
std::string data(const char* name) { return std::string(GHZ_DATA_DIR) + "/" + name; }
}  // namespace

TEST(Format, NineSignificantDigits) {
  EXPECT_EQ(fmt9(-0.37120017123), "-0.371200171");
  EXPECT_EQ(fmt9(0.3), "0.3");
  EXPECT_EQ(fmt9(std::nan("")), "nan");
  EXPECT_EQ(num9(1.0 / 3).dump(), "0.333333333");
  EXPECT_TRUE(num9(std::nan("")).is_null());
}

TEST(ParseState, Canonical) {
  const LoadedState s = parse_state(std::string(R"({"type":"canonical","lambda":[0.6,0,0,0,0.8],"theta":0})"));
  ASSERT_TRUE(s.canonical.has_value());
  EXPECT_DOUBLE_EQ((*s.canonical)[4], 0.8);
  EXPECT_EQ(s.vector[7], cplx(0.8));
}

TEST(ParseState, ThetaDefaultsToZero) {
  const LoadedState s = parse_state(std::string(R"({"type":"canonical","lambda":[0.6,0,0,0,0.8]})"));
  EXPECT_EQ(s.canonical->theta(), 0.0);
}

TEST(ParseState, Amplitudes) {
  const LoadedState s = parse_state(
      std::string(R"({"type":"amplitudes","re":[0.7071067811865476,0,0,0,0,0,0,0],"im":[0,0,0,0,0,0,0,0.7071067811865476]})"));
  EXPECT_FALSE(s.canonical.has_value());
  EXPECT_NEAR(s.vector[7].imag(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ParseState, Errors) {
  for (const char* bad : {R"({"lambda":[1,0,0,0,0]})", R"({"type":"canonical","lambda":[1,0,0,0]})",
                          R"({"type":"canonical","lambda":[1,0,0,0,"x"]})", R"({"type":"canonical","lambda":[1,1,0,0,0]})",
                          R"({"type":"canonical","lambda":[0.6,0,0,0,0.8],"theta":"pi"})",
                          R"({"type":"amplitudes","re":[1,0,0,0,0,0,0,0]})", R"({"type":"other"})", "{not json",
                          R"([1,2,3])"}) {
    EXPECT_THROW(parse_state(std::string(bad)), InputError) << bad;
  }
  EXPECT_THROW(load_state(data("does_not_exist.json")), InputError);
}

TEST(ParseState, DataFiles) {
  for (const char* f : {"ms_d03.json", "ghz.json", "h1_example.json", "h4_example.json", "s1_06_08.json",
                        "s2_l1.json", "example2_p0295.json"}) {
    EXPECT_NO_THROW(load_state(data(f))) << f;
  }
}

TEST(ReportJson, SchemaAndRoundTrip) {
  const LoadedState s = load_state(data("ms_d03.json"));
  const json j = report_to_json(classify(*s.canonical));
  EXPECT_EQ(validate_report_json(j), "");
  const std::string text = j.dump(2);
  EXPECT_EQ(json::parse(text).dump(2), text);
  EXPECT_EQ(j["witnesses"][2]["name"], "H3");
  EXPECT_EQ(j["witnesses"][2]["verdict"], "negative");
  EXPECT_EQ(j["structural_tag"], "S2(l3)");
  EXPECT_EQ(j["minimal_forms"], json::array({"S2(l3)"}));
  // Identical inputs give identical bytes.
  EXPECT_EQ(report_to_json(classify(*s.canonical)).dump(2), text);
}

TEST(ReportJson, RawVectorHasNullTag) {
  const LoadedState s = load_state(data("example2_p0295.json"));
  const json j = report_to_json(classify(s.vector));
  EXPECT_EQ(validate_report_json(j), "");
  EXPECT_TRUE(j["structural_tag"].is_null());
}

TEST(ReportJson, ValidatorRejectsBrokenReports) {
  EXPECT_NE(validate_report_json(json::array()), "");
  json j = report_to_json(classify(*load_state(data("ghz.json")).canonical));
  j.erase("detected_forms");
  EXPECT_NE(validate_report_json(j), "");
}

TEST(Table1Json, HasRangeAndEndpoints) {
  const json j = table1_to_json(scan_table1(0.8, 0.3, 1e-3));
  ASSERT_TRUE(j["p_range"].is_array());
  EXPECT_NEAR(j["p_range"][0].get<double>(), 0.291, 0.01);
  EXPECT_EQ(j["endpoints"][0]["H4"], "negative");
  EXPECT_EQ(j["endpoints"][1]["H5"], "nonnegative");
}

TEST(Io, TangleStudyIsLabelledEmpirical) {
  ScanConfig cfg;
  cfg.samples = 100;
  const json j = tangle_study_to_json(tangle_ordering_study(cfg));
  EXPECT_EQ(j["label"], "EMPIRICAL");
  EXPECT_EQ(j["samples"], 100u);
  EXPECT_EQ(j["link_fractions"].size(), 3u);
  EXPECT_DOUBLE_EQ(j["link_fractions"][0].get<double>(), 1.0);
}
