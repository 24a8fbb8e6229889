/**************************************************************************
 * gold_instances.cpp
 *
 * Copyright 2026 The kasami-designs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

// Prints the weight enumerator and the 2-(v,k,lambda) designs of a code.
// Usage: kasami_sample [p s l]   (default 3 2 1)

#include <cstdlib>
#include <iostream>

#include "kasami/kasami.hpp"

int main(int argc, char** argv) {
    int p = 3, s = 2, l = 1;
    if (argc == 4) {
        p = std::atoi(argv[1]);
        s = std::atoi(argv[2]);
        l = std::atoi(argv[3]);
    }
    try {
        const auto ctx = kasami::build_context(p, s, l);
        const auto& fp = ctx.params();
        std::cout << "GF(" << fp.p << "^" << fp.m << "), case " << kasami::to_string(fp.kase) << ", length " << fp.q << ", dimension "
                  << kasami::verify_dimension(ctx).rank() << "\n";

        const auto wd = kasami::weight_distribution_via_sums(ctx);
        std::cout << "enumerator:";
        for (const auto& [w, c] : wd.entries) std::cout << " " << c << "z^" << w;
        std::cout << "\nclosed form agrees: " << (wd == kasami::predicted_weight_distribution(fp) ? "yes" : "no") << "\n";

        for (const auto& d : kasami::design_parameters_from(fp, wd, kasami::predicted_row_lambdas(fp)))
            std::cout << "2-(" << d.params.v << ", " << d.params.k << ", " << d.params.lambda << ") with " << d.params.b << " blocks\n";
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
