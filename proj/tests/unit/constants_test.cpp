#include <gtest/gtest.h>

#include <array>
#include <vector>

#include "ldp/constants.hpp"
#include "ldp/error.hpp"

namespace ldp {
namespace {

TEST(ConstantEntry, ScalarReads) {
  const auto d = ConstantEntry::scalar(0.25);
  EXPECT_EQ(d.kind(), ConstantKind::scalar_double);
  EXPECT_EQ(d.as_double(), 0.25);
  EXPECT_TRUE(d.dims().empty());
  EXPECT_THROW((void)d.as_int(), TypeError);

  const auto i = ConstantEntry::scalar(std::int64_t{7});
  EXPECT_EQ(i.kind(), ConstantKind::scalar_int);
  EXPECT_EQ(i.as_int(), 7);
  EXPECT_THROW((void)i.as_double(), TypeError);
}

TEST(ConstantEntry, ArrayKindsAndDims) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6};
  const std::array<std::size_t, 1> d1{6};
  const std::array<std::size_t, 2> d2{2, 3};
  EXPECT_EQ(ConstantEntry::array(v, d1).kind(), ConstantKind::double_array_1d);
  const auto e = ConstantEntry::array(v, d2);
  EXPECT_EQ(e.kind(), ConstantKind::double_array_2d);
  ASSERT_EQ(e.dims().size(), 2u);
  EXPECT_EQ(e.dims()[1], 3u);
  EXPECT_EQ(e.doubles()[5], 6.0);
  EXPECT_THROW((void)e.ints(), TypeError);

  const std::array<std::size_t, 1> wrong{5};
  EXPECT_THROW((void)ConstantEntry::array(v, wrong), ShapeError);

  const std::vector<std::int64_t> iv{1, 2};
  const std::array<std::size_t, 1> id{2};
  EXPECT_EQ(ConstantEntry::array(iv, id).kind(), ConstantKind::int_array_1d);
  EXPECT_THROW((void)ConstantEntry::array(iv, d2), ShapeError);
}

TEST(ConstantBlock, SetGetReplace) {
  ConstantBlock block;
  EXPECT_FALSE(block.contains("a"));
  EXPECT_THROW((void)block.get("a"), ConfigError);
  block.set("a", ConstantEntry::scalar(1.0));
  block.set("a", ConstantEntry::scalar(2.0));
  EXPECT_EQ(block.get("a").as_double(), 2.0);
  EXPECT_EQ(block.size(), 1u);
  EXPECT_THROW(block.set("a", ConstantEntry::scalar(std::int64_t{2})), TypeError);
  EXPECT_EQ(block.get("a").as_double(), 2.0);
}

TEST(ConstantBlock, EntriesAreCopies) {
  std::vector<double> source{1.0, 2.0};
  const std::array<std::size_t, 1> dims{2};
  ConstantBlock block;
  block.set("v", ConstantEntry::array(source, dims));
  source[0] = 100.0;
  EXPECT_EQ(block.get("v").doubles()[0], 1.0);
}

}  // namespace
}  // namespace ldp
