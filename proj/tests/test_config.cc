#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "gevrey_bbm/config.h"
#include "test_util.h"

namespace gevrey_bbm {
namespace {

TEST(KeyValueFile, ParsesSectionsCommentsAndWhitespace) {
  const KeyValueFile f = KeyValueFile::parse(
      "# header comment\n"
      "[grid]\n"
      "  n_points = 256   \n"
      "domain_length=64\n"
      "\n"
      "[data]\n"
      "profile = gaussian  # trailing comment\n"
      "list = 1, 2.5 ,3e-1\n");
  EXPECT_EQ(f.get_int("n_points"), 256);
  EXPECT_EQ(f.get_double("domain_length"), 64.0);
  EXPECT_EQ(f.get("profile"), "gaussian");
  EXPECT_EQ(f.get_double_list("list"), (std::vector<double>{1.0, 2.5, 0.3}));
}

TEST(KeyValueFile, DuplicateKeysAreRejected) {
  EXPECT_THROW_KIND(KeyValueFile::parse("[a]\nx = 1\n[b]\nx = 2\n"), ErrorKind::kInvalidInput);
}

TEST(KeyValueFile, MalformedLinesAreRejected) {
  EXPECT_THROW_KIND(KeyValueFile::parse("just text\n"), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(KeyValueFile::parse("= 3\n"), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(KeyValueFile::parse("[unterminated\n"), ErrorKind::kInvalidInput);
}

TEST(KeyValueFile, TypedLookups) {
  const KeyValueFile f = KeyValueFile::parse("a = 1.5\nb = 7\nc = true\nd = no\ne = x\n");
  EXPECT_EQ(f.get_double("a"), 1.5);
  EXPECT_EQ(f.get_double("missing", 2.0), 2.0);
  EXPECT_EQ(f.get_int("b"), 7);
  EXPECT_EQ(f.get_uint64("b"), 7u);
  EXPECT_TRUE(f.get_bool("c", false));
  EXPECT_FALSE(f.get_bool("d", true));
  EXPECT_TRUE(f.get_bool("missing", true));
  EXPECT_EQ(f.get_string("missing", "fb"), "fb");
  EXPECT_THROW_KIND(f.get_double("e"), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(f.get_int("a"), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(f.get_bool("e", false), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(f.get("missing"), ErrorKind::kInvalidInput);
}

TEST(KeyValueFile, SerializeRoundTrip) {
  KeyValueFile f;
  f.set("zeta", "1");
  f.set("alpha", "0.5,0.25");
  const KeyValueFile back = KeyValueFile::parse(f.serialize());
  EXPECT_EQ(back.values(), f.values());
  EXPECT_EQ(f.serialize(), "alpha = 0.5,0.25\nzeta = 1\n");
}

TEST(KeyValueFile, MissingFileIsInvalidInput) {
  EXPECT_THROW_KIND(KeyValueFile::load("/nonexistent/dir/file.cfg"), ErrorKind::kInvalidInput);
}

TEST(KeyValueFile, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "gevrey_bbm_kv_test.cfg";
  KeyValueFile f;
  f.set("seed", "20240617");
  f.save(path.string());
  EXPECT_EQ(KeyValueFile::load(path.string()).get_uint64("seed"), 20240617u);
  std::filesystem::remove(path);
}

TEST(ParseNumbers, StrictParsing) {
  EXPECT_EQ(parse_double("k", "1e-3"), 1e-3);
  EXPECT_THROW_KIND(parse_double("k", "1.0abc"), ErrorKind::kInvalidInput);
  EXPECT_THROW_KIND(parse_double("k", ""), ErrorKind::kInvalidInput);
  EXPECT_EQ(parse_int("k", "-12"), -12);
  EXPECT_THROW_KIND(parse_int("k", "3.5"), ErrorKind::kInvalidInput);
}

}  // namespace
}  // namespace gevrey_bbm
