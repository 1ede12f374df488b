#pragma once

#include <cstdint>

namespace pcsp {

// Global guard for the size of constructed objects (tuples in a power
// structure, assignments tried by brute force, constraints collected by a
// search). Defaults to 1e7 and can be overridden with the PCSP_LAB_CAPACITY
// environment variable.
std::int64_t capacity_limit();

// Throws CapacityError when `amount` (a count of tuples/nodes/constraints)
// exceeds capacity_limit(). `what` names the construction for the message.
void check_capacity(std::int64_t amount, const char* what);

}  // namespace pcsp
