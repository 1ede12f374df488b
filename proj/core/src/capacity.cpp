#include "pcsp/capacity.hpp"

#include <cstdlib>
#include <string>

#include "pcsp/errors.hpp"

namespace pcsp {

std::int64_t capacity_limit() {
    static const std::int64_t limit = [] {
        if (const char* env = std::getenv("PCSP_LAB_CAPACITY")) {
            char* end = nullptr;
            long long v = std::strtoll(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::int64_t>(v);
        }
        return static_cast<std::int64_t>(10'000'000);
    }();
    return limit;
}

void check_capacity(std::int64_t amount, const char* what) {
    if (amount < 0 || amount > capacity_limit()) {
        throw CapacityError(std::string(what) + " would need " +
                            (amount < 0 ? std::string("an overflowing number of")
                                        : std::to_string(amount)) +
                            " elements, capacity is " + std::to_string(capacity_limit()));
    }
}

}  // namespace pcsp
