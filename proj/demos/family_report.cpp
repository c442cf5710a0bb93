// Walk the built-in families and print the verdict surface for each.
#include <cstdio>

#include "rankone/rankone.hpp"

using namespace rankone;

static const char* show(Status s) { return to_string(s); }

int main() {
    struct Row {
        const char* name;
        ParamSpec spec;
    };
    const Row rows[] = {
        {"chacon", chacon_spec()},
        {"staircase", staircase_spec()},
        {"even_staircase", even_staircase_spec()},
        {"z_example", z_example_spec()},
        {"x_2", xp_spec(2)},
        {"y_2", yp_spec(2)},
    };
    std::printf("%-15s %-9s %-8s %-12s %-10s %s\n", "family", "bounded", "p_max", "weak_mixing",
                "mixing", "certificate");
    for (const auto& row : rows) {
        AnalysisReport r = analyze(row.spec);
        std::string pm = r.p_max_value ? std::to_string(*r.p_max_value) : "-";
        const char* rule = r.weak_mixing.certificate ? r.weak_mixing.certificate->rule.c_str()
                                                     : "(none)";
        std::printf("%-15s %-9s %-8s %-12s %-10s %s\n", row.name, show(r.bounded.status),
                    pm.c_str(), show(r.weak_mixing.status), show(r.mixing.status), rule);
    }
    return 0;
}
