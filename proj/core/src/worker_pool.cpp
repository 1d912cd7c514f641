#include "worker_pool.hpp"

namespace ldp::detail {

WorkerPool::WorkerPool(std::size_t workers) {
  threads_.reserve(workers);
  for (std::size_t i = 0; i < workers; ++i) {
    threads_.emplace_back([this, i] { run(i); });
  }
}

WorkerPool::~WorkerPool() {
  wait();
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) {
    t.join();
  }
}

void WorkerPool::submit(std::function<void(std::size_t)> job) {
  wait();
  {
    std::lock_guard lock(mu_);
    job_ = std::move(job);
    pending_ = threads_.size();
    ++generation_;
  }
  start_cv_.notify_all();
}

void WorkerPool::wait() {
  std::unique_lock lock(mu_);
  done_cv_.wait(lock, [this] { return pending_ == 0; });
}

void WorkerPool::run(std::size_t index) {
  std::uint64_t seen = 0;
  for (;;) {
    std::function<void(std::size_t)>* job = nullptr;
    {
      std::unique_lock lock(mu_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) {
        return;
      }
      seen = generation_;
      job = &job_;
    }
    // The job is not replaced until pending_ drops to zero, so the pointer
    // stays valid for the duration of this call.
    (*job)(index);
    {
      std::lock_guard lock(mu_);
      if (--pending_ == 0) {
        done_cv_.notify_all();
      }
    }
  }
}

}  // namespace ldp::detail
