#include "independent_sets.hpp"

namespace mgmw::detail {

namespace {

struct Search {
    const std::vector<Bits>& compat;
    const std::function<void(const std::vector<int>&)>& visit;
    std::vector<int> current;

    void run(Bits p, Bits x) {
        if (p.none() && x.none()) {
            visit(current);
            return;
        }
        // Pivot with the most compatible candidates left in p.
        Bits px = p | x;
        std::size_t pivot = px.find_first();
        std::size_t best = (p & compat[pivot]).count();
        for (std::size_t u = px.find_next(pivot); u != Bits::npos; u = px.find_next(u)) {
            std::size_t c = (p & compat[u]).count();
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        Bits branch = p - compat[pivot];
        for (std::size_t v = branch.find_first(); v != Bits::npos; v = branch.find_next(v)) {
            current.push_back(static_cast<int>(v));
            run(p & compat[v], x & compat[v]);
            current.pop_back();
            p.reset(v);
            x.set(v);
        }
    }
};

}  // namespace

void for_each_maximal_independent_set(const std::vector<Bits>& conflict, const Bits& allowed,
                                      const std::function<void(const std::vector<int>&)>& visit) {
    const std::size_t n = conflict.size();
    std::vector<Bits> compat(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
        compat[i] = ~conflict[i] & allowed;
        compat[i].reset(i);
    }
    Search s{compat, visit, {}};
    s.run(allowed, Bits(n));
}

void for_each_maximal_independent_set(const std::vector<Bits>& conflict,
                                      const std::function<void(const std::vector<int>&)>& visit) {
    Bits all(conflict.size());
    all.set();
    for_each_maximal_independent_set(conflict, all, visit);
}

}  // namespace mgmw::detail
