#include <benchmark/benchmark.h>

#include "ldp/ldp.hpp"

namespace {

using namespace ldp;

// Args: vvl, workers.
template <KernelId Kernel, Backend Where>
void BM_Kernel(benchmark::State& state) {
  const auto vvl = static_cast<std::size_t>(state.range(0));
  const auto workers = static_cast<std::size_t>(state.range(1));
  const LatticeShape shape{32, 32, 32};
  const std::size_t ncomp = Kernel == KernelId::scale ? 3 : lb::kQ;
  const auto desc = make_descriptor(shape, ncomp);

  TargetDevice device({Where, workers, arena_bytes_for(2 * desc.size())});
  const LaunchPlan plan{desc.padded_sites, vvl, workers, kDefaultTpb};
  auto a = target_malloc(device, desc);
  auto b = target_malloc(device, desc);
  if constexpr (Kernel == KernelId::scale) {
    copy_to_target(a, random_vector_field(shape, 1));
    upload_scale_factor(device, 1.0 + 1e-9);
  } else {
    const auto init = random_binary_state(shape, 1);
    copy_to_target(a, init.f);
    copy_to_target(b, init.g);
    upload_model(device, lb::make_d3q19());
  }

  for (auto _ : state) {
    if constexpr (Kernel == KernelId::scale) {
      launch_scale(device, a, plan);
    } else {
      launch_binary_collision(device, a, b, plan);
    }
    sync_target(device);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(shape.nsites()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(shape.nsites() *
                                                                         bytes_per_site(Kernel)));
}

void sweep(benchmark::internal::Benchmark* b) {
  for (std::int64_t workers : {1, 4}) {
    for (std::int64_t vvl : {1, 2, 4, 8, 16}) {
      b->Args({vvl, workers});
    }
  }
  b->ArgNames({"vvl", "workers"})->UseRealTime();
}

BENCHMARK(BM_Kernel<KernelId::scale, Backend::threaded>)->Apply(sweep);
BENCHMARK(BM_Kernel<KernelId::binary_collision, Backend::threaded>)->Apply(sweep);
BENCHMARK(BM_Kernel<KernelId::binary_collision, Backend::emulated>)->Apply(sweep);

void BM_MaskedCopy(benchmark::State& state) {
  const auto desc = make_descriptor({32, 32, 32}, lb::kQ);
  TargetDevice device({Backend::threaded, 1});
  auto buf = target_malloc(device, desc);
  const Field host(desc);
  SiteMask mask(desc.nsites());
  for (std::size_t s = 0; s < desc.nsites(); s += static_cast<std::size_t>(state.range(0))) {
    mask.set(s, true);
  }
  for (auto _ : state) {
    copy_to_target_masked(buf, host, mask);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(mask.included_count() * desc.ncomp));
}
BENCHMARK(BM_MaskedCopy)->Arg(1)->Arg(4)->Arg(64)->ArgName("stride");

}  // namespace

BENCHMARK_MAIN();
