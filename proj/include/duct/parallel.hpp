#pragma once

#include <functional>

namespace duct {

void set_thread_count(int n);
int thread_count();
// Runs body(i) for i in [0, n) on the configured worker count.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace duct
