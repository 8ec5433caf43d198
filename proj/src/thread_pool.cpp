#include "eigenid/thread_pool.hpp"

#include <exception>

namespace eigenid {

ThreadPool::ThreadPool(std::size_t workers) {
  if (workers < 1) workers = 1;
  threads_.reserve(workers - 1);
  for (std::size_t i = 0; i + 1 < workers; ++i)
    threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  work_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

namespace {

// Claims indices one at a time until the range is drained or a task throws.
void drain(std::mutex& mu, std::size_t& next, std::size_t count,
           const std::function<void(std::size_t)>& body,
           std::exception_ptr& error) {
  for (;;) {
    std::size_t i;
    {
      std::lock_guard<std::mutex> lock(mu);
      if (next >= count) return;
      i = next++;
    }
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      next = count;  // abandon remaining indices
      return;
    }
  }
}

}  // namespace

void ThreadPool::parallel_for(std::size_t count,
                              const std::function<void(std::size_t)>& body) {
  if (threads_.empty()) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::lock_guard<std::mutex> job_lock(job_mu_);
  {
    std::lock_guard<std::mutex> lock(mu_);
    body_ = &body;
    count_ = count;
    next_ = 0;
    error_ = nullptr;
    active_ = threads_.size();
    ++generation_;
  }
  work_cv_.notify_all();

  drain(mu_, next_, count_, body, error_);

  std::unique_lock<std::mutex> lock(mu_);
  done_cv_.wait(lock, [this] { return active_ == 0; });
  body_ = nullptr;
  if (error_) std::rethrow_exception(error_);
}

void ThreadPool::worker_loop() {
  std::size_t seen_generation = 0;
  for (;;) {
    const std::function<void(std::size_t)>* body;
    {
      std::unique_lock<std::mutex> lock(mu_);
      work_cv_.wait(lock, [&] {
        return stop_ || generation_ != seen_generation;
      });
      if (stop_) return;
      seen_generation = generation_;
      body = body_;
    }
    drain(mu_, next_, count_, *body, error_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (--active_ == 0) done_cv_.notify_all();
    }
  }
}

}  // namespace eigenid
