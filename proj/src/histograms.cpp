#include "staynet/histograms.hpp"

namespace staynet {

int decade_bin(std::uint64_t n) {
    int k = 0;
    while (n >= 10) {
        n /= 10;
        ++k;
    }
    return k;
}

std::uint64_t decade_low(int k) {
    std::uint64_t v = 1;
    while (k-- > 0) v *= 10;
    return v;
}

std::uint64_t decade_high(int k) { return decade_low(k + 1) - 1; }

} // namespace staynet
