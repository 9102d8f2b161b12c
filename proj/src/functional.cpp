#include "pathhj/functional.hpp"

namespace pathhj {

Functional linear_shift(const Functional& phi, std::vector<double> s) {
    Functional out;
    out.tags = phi.tags;
    out.name = phi.name.empty() ? "shifted" : phi.name + "_shifted";
    out.eval = [base = phi.eval, s = std::move(s)](const PathPoint& p) {
        double dot = 0.0;
        auto xt = p.current();
        for (size_t i = 0; i < s.size(); ++i) dot += s[i] * xt[i];
        return base(p) - dot;
    };
    return out;
}

}  // namespace pathhj
