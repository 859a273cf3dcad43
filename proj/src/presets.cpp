#include "bckks/presets.hpp"

#include <cmath>

namespace bckks {

namespace {

Context make(std::size_t N, std::size_t lambda_B, double sigma, std::size_t h, int log2_delta,
             int log2_bstar, int log2_bmax, std::size_t kappa, Domain domain) {
    Context c;
    c.ring = domain == Domain::Exact ? RingParams::exact(N, lambda_B)
                                     : RingParams::modular(N, lambda_B, kDefaultModulus);
    c.sigma = sigma;
    c.h = h;
    c.delta = std::ldexp(1.0, log2_delta);
    c.B_star = std::ldexp(1.0, log2_bstar);
    c.B_max = std::ldexp(1.0, log2_bmax);
    c.kappa = kappa;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"desk-64",    "desk-256",   "desk-1024",  "paper-1024",
            "paper-2048", "paper-4096", "paper-8192"};
}

Context get_preset(const std::string& name) {
    if (name == "desk-64") return make(64, 4, 3.19, 16, 2, 20, 20, 4, Domain::Exact);
    if (name == "desk-256") return make(256, 32, 3.19, 64, 20, 39, 19, 8, Domain::Exact);
    if (name == "desk-1024") return make(1024, 32, 3.19, 64, 20, 39, 19, 8, Domain::Exact);
    // Paper table rows: sigma = 3.19, h = 192, delta = 2^40, B_max = delta/2.
    if (name == "paper-1024") return make(1024, 16, 3.19, 192, 40, 39, 39, 16, Domain::Modular);
    if (name == "paper-2048") return make(2048, 16, 3.19, 192, 40, 39, 39, 16, Domain::Modular);
    if (name == "paper-4096") return make(4096, 32, 3.19, 192, 40, 39, 39, 16, Domain::Modular);
    if (name == "paper-8192") return make(8192, 32, 3.19, 192, 40, 39, 39, 16, Domain::Modular);
    throw ParamError("unknown preset: " + name);
}

Context with_domain(Context ctx, Domain domain, std::uint64_t q) {
    ctx.ring = domain == Domain::Exact
                   ? RingParams::exact(ctx.ring.N, ctx.ring.lambda_B)
                   : RingParams::modular(ctx.ring.N, ctx.ring.lambda_B, q);
    return ctx;
}

}  // namespace bckks
