#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <mutex>
#include <random>
#include <vector>

#include "ldp/error.hpp"
#include "ldp/execution.hpp"
#include "ldp/kernels.hpp"
#include "ldp/runner.hpp"

namespace ldp {
namespace {

std::vector<std::size_t> flatten(const std::vector<ChunkRange>& ranges) {
  std::vector<std::size_t> out;
  for (const auto& r : ranges) {
    for (std::size_t c = r.begin; c < r.end; ++c) out.push_back(c);
  }
  return out;
}

TEST(Plan, ChunkAndGroupCounts) {
  const LaunchPlan plan{64, 8, 1, 4};
  EXPECT_EQ(plan.chunk_count(), 8u);
  EXPECT_EQ(group_count(plan), 2u);
  EXPECT_EQ(group_count({64, 8, 1, 3}), 3u);
  EXPECT_EQ(group_count({64, 1, 1, 128}), 1u);
}

TEST(Plan, Validation) {
  EXPECT_THROW(validate({64, 0, 1, 1}), PlanError);
  EXPECT_THROW(validate({64, 3, 1, 1}), PlanError);
  EXPECT_THROW(validate({64, 8, 0, 1}), PlanError);
  EXPECT_THROW(validate({64, 8, 1, 0}), PlanError);
  EXPECT_THROW(validate({0, 8, 1, 1}), PlanError);
  EXPECT_THROW(validate({512, 512, 1, 1}), PlanError);
  EXPECT_NO_THROW(validate({72, 8, 3, 5}));
}

TEST(Schedule, ThreadedBlockPartition) {
  const auto s = backend_schedule(Backend::threaded, {64, 8, 2, 128});
  ASSERT_EQ(s.per_worker.size(), 2u);
  EXPECT_EQ(flatten(s.per_worker[0]), (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(flatten(s.per_worker[1]), (std::vector<std::size_t>{4, 5, 6, 7}));

  const auto uneven = backend_schedule(Backend::threaded, {7, 1, 2, 128});
  EXPECT_EQ(flatten(uneven.per_worker[0]).size(), 4u);
  EXPECT_EQ(flatten(uneven.per_worker[1]).size(), 3u);
}

TEST(Schedule, SingleWorkerTakesAll) {
  for (Backend b : {Backend::reference, Backend::threaded, Backend::emulated}) {
    const auto s = backend_schedule(b, {64, 8, 1, 2});
    ASSERT_EQ(s.per_worker.size(), 1u);
    EXPECT_EQ(flatten(s.per_worker[0]), (std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7}));
  }
}

TEST(Schedule, EmulatedRoundRobinGroups) {
  const auto s = backend_schedule(Backend::emulated, {64, 4, 2, 3});  // 16 chunks, 6 groups
  ASSERT_EQ(s.per_worker.size(), 2u);
  EXPECT_EQ(s.per_worker[0], (std::vector<ChunkRange>{{0, 3}, {6, 9}, {12, 15}}));
  EXPECT_EQ(s.per_worker[1], (std::vector<ChunkRange>{{3, 6}, {9, 12}, {15, 16}}));
}

TEST(Schedule, EveryChunkExactlyOnce) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t vvl = std::size_t{1} << (rng() % 6);
    const LaunchPlan plan{vvl * (1 + rng() % 100), vvl, 1 + rng() % 9, 1 + rng() % 20};
    for (Backend b : {Backend::reference, Backend::threaded, Backend::emulated}) {
      std::vector<int> hits(plan.chunk_count(), 0);
      for (const auto& w : backend_schedule(b, plan).per_worker) {
        for (std::size_t c : flatten(w)) ++hits.at(c);
      }
      ASSERT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
    }
  }
}

class Launches : public ::testing::TestWithParam<Backend> {};

INSTANTIATE_TEST_SUITE_P(Backends, Launches,
                         ::testing::Values(Backend::reference, Backend::threaded,
                                           Backend::emulated),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST_P(Launches, InvocationBasesAndLaneCount) {
  TargetDevice device({GetParam(), 3, 1 << 20});
  const auto desc = make_descriptor({64, 1, 1}, 1);
  auto buf = target_malloc(device, desc);
  std::mutex mu;
  std::vector<std::size_t> bases;
  std::vector<std::size_t> lanes;
  launch(device, LaunchPlan{64, 8, 3, 4}, {{inout(buf)}, {}}, [&](const auto& ctx) {
    std::lock_guard lock(mu);
    bases.push_back(ctx.base_index());
    std::size_t n = 0;
    ctx.for_each_lane([&](std::size_t) { ++n; });
    lanes.push_back(n);
  });
  sync_target(device);
  std::sort(bases.begin(), bases.end());
  EXPECT_EQ(bases, (std::vector<std::size_t>{0, 8, 16, 24, 32, 40, 48, 56}));
  EXPECT_TRUE(std::all_of(lanes.begin(), lanes.end(), [](std::size_t n) { return n == 8; }));
  EXPECT_EQ(device.stats().launches, 1u);
}

TEST_P(Launches, ForEachLaneVisitsInOrder) {
  TargetDevice device({GetParam(), 1, 1 << 20});
  const auto desc = make_descriptor({8, 1, 1}, 1);
  auto buf = target_malloc(device, desc);
  for (std::size_t vvl : {1u, 2u, 8u}) {
    std::vector<std::size_t> seen;
    launch(device, LaunchPlan{vvl, vvl, 1, 1}, {{inout(buf)}, {}}, [&](const auto& ctx) {
      for_each_lane(ctx, [&](std::size_t v) { seen.push_back(v); });
    });
    sync_target(device);
    std::vector<std::size_t> want(vvl);
    for (std::size_t v = 0; v < vvl; ++v) want[v] = v;
    EXPECT_EQ(seen, want);
  }
}

TEST_P(Launches, RuntimeLaneCount) {
  TargetDevice device({GetParam(), 2, 1 << 20});
  const auto desc = make_descriptor({48, 1, 1}, 1, 1);
  auto buf = target_malloc(device, desc);
  std::atomic<std::size_t> total{0};
  launch(device, make_plan(device, desc, 12), {{inout(buf)}, {}}, [&](const auto& ctx) {
    EXPECT_EQ(std::decay_t<decltype(ctx)>::static_lanes, 0u);
    EXPECT_EQ(ctx.vvl(), 12u);
    total += ctx.vvl();
  });
  sync_target(device);
  EXPECT_EQ(total.load(), 48u);
}

TEST_P(Launches, KernelErrorSurfacesAtSync) {
  TargetDevice device({GetParam(), 2, 1 << 20});
  const auto desc = make_descriptor({16, 1, 1}, 1);
  auto buf = target_malloc(device, desc);
  EXPECT_NO_THROW(launch(device, make_plan(device, desc, 4), {{inout(buf)}, {}},
                         [](const auto& ctx) {
                           if (ctx.base_index() == 8) throw SingularStateError("boom");
                         }));
  EXPECT_THROW(sync_target(device), SingularStateError);
  EXPECT_FALSE(device.launch_in_flight());
  EXPECT_NO_THROW(sync_target(device));
}

TEST_P(Launches, SyncWithoutLaunchIsNoOp) {
  TargetDevice device({GetParam(), 2, 1 << 20});
  EXPECT_NO_THROW(sync_target(device));
  EXPECT_NO_THROW(sync_target(device));
}

TEST_P(Launches, ResultsVisibleAfterSync) {
  TargetDevice device({GetParam(), 4, 1 << 20});
  const auto desc = make_descriptor({10, 10, 10}, 3);
  const Field src = random_vector_field(desc.shape, 1);
  auto buf = target_malloc(device, desc);
  copy_to_target(buf, src);
  upload_scale_factor(device, 2.0);
  (void)launch_scale(device, buf, make_plan(device, desc, 8));
  sync_target(device);
  Field out(desc);
  copy_from_target(out, buf);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t s = 0; s < desc.nsites(); ++s) {
      ASSERT_EQ(out(c, s), 2.0 * src(c, s));
    }
  }
}

TEST(LaunchErrors, BufferFromAnotherDevice) {
  TargetDevice a({Backend::threaded, 2});
  TargetDevice b({Backend::threaded, 2});
  const auto desc = make_descriptor({8, 1, 1}, 1);
  auto buf = target_malloc(b, desc);
  EXPECT_THROW(launch(a, make_plan(a, desc, 1), {{inout(buf)}, {}}, [](const auto&) {}),
               DeviceError);
  EXPECT_FALSE(a.launch_in_flight());
}

TEST(LaunchErrors, FreedBufferMissingConstantAndOversizedExtent) {
  TargetDevice device({Backend::reference, 1});
  const auto desc = make_descriptor({8, 1, 1}, 1);
  auto buf = target_malloc(device, desc);
  EXPECT_THROW(launch(device, make_plan(device, desc, 1), {{in(buf)}, {"missing"}},
                      [](const auto&) {}),
               ConfigError);
  EXPECT_THROW(launch(device, LaunchPlan{16, 1, 1, 1}, {{in(buf)}, {}}, [](const auto&) {}),
               PlanError);
  target_free(buf);
  EXPECT_THROW(launch(device, make_plan(device, desc, 1), {{in(buf)}, {}}, [](const auto&) {}),
               LifecycleError);
}

TEST(LaunchErrors, IndivisibleVvl) {
  TargetDevice device({Backend::reference, 1});
  EXPECT_THROW((void)make_plan(device, make_descriptor({8, 1, 1}, 1), 3), PlanError);
}

TEST(CheckWrites, RejectsWriteOutsideChunk) {
  for (Backend b : {Backend::reference, Backend::threaded, Backend::emulated}) {
    DeviceOptions o{b, 2, 1 << 20, true};
    TargetDevice device(o);
    const auto desc = make_descriptor({16, 1, 1}, 1);
    auto buf = target_malloc(device, desc);
    launch(device, make_plan(device, desc, 4), {{inout(buf)}, {}}, [](const auto& ctx) {
      double* f = ctx.out(0);
      f[(ctx.base_index() + 4) % 16] = 1.0;  // neighbor chunk
    });
    EXPECT_THROW(sync_target(device), ContractViolation) << to_string(b);
  }
}

TEST(CheckWrites, AcceptsConformingKernel) {
  DeviceOptions o{Backend::threaded, 2, 1 << 20, true};
  TargetDevice device(o);
  const auto desc = make_descriptor({4, 4, 4}, 3);
  auto buf = target_malloc(device, desc);
  copy_to_target(buf, random_vector_field(desc.shape, 2));
  upload_scale_factor(device, 0.5);
  (void)launch_scale(device, buf, make_plan(device, desc, 8));
  EXPECT_NO_THROW(sync_target(device));
}

// Same kernel, every backend, worker count and VVL: identical bits.
TEST(Determinism, ScaleAcrossConfigurations) {
  const LatticeShape shape{6, 5, 7};
  const Field src = random_vector_field(shape, 3);
  const Field want = run_scale(src, 0.37, {Backend::reference, 1, 1});
  for (Backend b : {Backend::reference, Backend::threaded, Backend::emulated}) {
    for (std::size_t vvl : {1u, 2u, 4u, 8u}) {
      for (std::size_t w : {1u, 2u, 3u, 4u}) {
        const Field got = run_scale(src, 0.37, {b, vvl, w, 3});
        ASSERT_TRUE(field_bitwise_equal(got, want)) << to_string(b) << vvl << w;
      }
    }
  }
}

}  // namespace
}  // namespace ldp
