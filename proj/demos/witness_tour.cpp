// Construct witness block pairs with prescribed length differences and
// replay them through the oracle.
#include <cstdio>

#include "rankone/rankone.hpp"

using namespace rankone;

int main() {
    ParamSpec s = chacon_spec();
    for (Int h = 1; h <= 3; ++h) {
        WitnessPair w = witness_difference(s, 1, h);
        std::string a = render_block(s, w.alpha);
        std::string b = render_block(s, w.beta);
        auto rr = oracle::verify_witness(s, w);
        std::printf("h=%lld  |alpha|=%lld  |beta|=%lld  diff=%lld  replay=%s\n",
                    static_cast<long long>(h), static_cast<long long>(w.alpha.total_length),
                    static_cast<long long>(w.beta.total_length),
                    static_cast<long long>(w.target), rr.pass ? "pass" : "FAIL");
        if (a.size() <= 72) std::printf("  alpha = %s\n", a.c_str());
        if (b.size() <= 72) std::printf("  beta  = %s\n", b.c_str());
    }
    return 0;
}
