// Copyright 2026 The torusmass Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "torusmass/error.hpp"
#include "torusmass/report_io.hpp"

namespace torusmass {
namespace {

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> expo(-300.0, 300.0);
  for (int i = 0; i < 10000; ++i) {
    const double x = (i % 2 ? -1.0 : 1.0) * std::pow(10.0, expo(rng));
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(NAN), "nan");
}

TEST(Json, NonFiniteBecomesNull) {
  const Json j = Json::object().set("x", NAN).set("y", INFINITY).set("z", 1.5);
  const auto doc = nlohmann::json::parse(j.dump());
  EXPECT_TRUE(doc.at("x").is_null());
  EXPECT_TRUE(doc.at("y").is_null());
  EXPECT_EQ(doc.at("z").get<double>(), 1.5);
}

TEST(Json, StructureAndEscaping) {
  Json arr = Json::array();
  arr.push(1).push("a\"b\\c\n").push(true).push(nullptr).push(Json::object());
  const Json j = Json::object().set("list", arr).set("empty", Json::array()).set("k", std::string("v"));
  for (int indent : {0, 2}) {
    const auto doc = nlohmann::json::parse(j.dump(indent));
    EXPECT_EQ(doc.at("list")[1].get<std::string>(), "a\"b\\c\n");
    EXPECT_EQ(doc.at("list")[0].get<int>(), 1);
    EXPECT_TRUE(doc.at("list")[3].is_null());
    EXPECT_TRUE(doc.at("empty").empty());
  }
  // Keys keep insertion order.
  const std::string text = Json::object().set("b", 1).set("a", 2).dump(0);
  EXPECT_EQ(text, "{\"b\":1,\"a\":2}");
}

TEST(Json, DoublesAreLossless) {
  const double x = 0.1 + 0.2;
  const auto doc = nlohmann::json::parse(Json::object().set("x", x).dump());
  EXPECT_EQ(doc.at("x").get<double>(), x);
}

TEST(AtomicWrite, ReplacesContent) {
  const auto path = std::filesystem::temp_directory_path() / "torusmass_atomic.txt";
  write_file_atomic(path, "first");
  write_file_atomic(path, "second");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second");
  auto tmp = path;
  tmp += ".tmp";
  EXPECT_FALSE(std::filesystem::exists(tmp));
  std::filesystem::remove(path);
}

TEST(AtomicWrite, MissingDirectoryThrows) {
  EXPECT_THROW(write_file_atomic("/nonexistent-dir/x/y.txt", "data"), IoError);
}

}  // namespace
}  // namespace torusmass
