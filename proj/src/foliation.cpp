#include "coindex/foliation.hpp"

namespace coindex {

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::tangential: return "tangential";
        case Variant::split: return "split";
        case Variant::split_nu1: return "split_nu1";
    }
    return "?";
}

Variant variant_from_name(const std::string& s) {
    if (s == "tangential") return Variant::tangential;
    if (s == "split") return Variant::split;
    if (s == "split_nu1") return Variant::split_nu1;
    throw config_error("unknown foliation variant: " + s);
}

std::string atlas_property_name(AtlasProperty p) {
    switch (p) {
        case AtlasProperty::adapted: return "adapted";
        case AtlasProperty::splitting: return "splitting";
        case AtlasProperty::comfortable: return "comfortable";
    }
    return "?";
}

AtlasPropertyResult atlas_property_check(const AtlasSpec& atlas, AtlasProperty property,
                                         int order) {
    AtlasPropertyResult res;
    const int n = atlas.n;
    for (const auto& [key, tr] : atlas.transitions) {
        auto [i, j] = key;
        auto it = atlas.overlap_samples.find(key);
        if (it == atlas.overlap_samples.end()) continue;
        ++res.overlaps_checked;
        for (const auto& p : it->second) {
            auto jet = tr.jet_at(p, order);
            Point q;
            MapJet<GaussRat> c;  // recentered jet
            for (int m = 0; m < n; ++m) {
                GaussRat v = jet.comps[size_t(m)].constant_term();
                q.push_back(v);
                c.comps.push_back(jet.comps[size_t(m)] - PolyN::constant(n, v, order));
            }
            std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            // adapted: z1-hat = a z1 with a a unit
            auto val = c.comps[0].valuation(0);
            bool adapted_here = val.value >= 1 &&
                                !c.comps[0].divide_by_var_power(0, 1).constant_term().is_zero();
            if (property == AtlasProperty::adapted) {
                if (!adapted_here) res.failures.push_back("not adapted on " + where);
                continue;
            }
            if (!adapted_here) {
                res.failures.push_back("not adapted on " + where);
                continue;
            }
            // splitting: d z-hat^i / d z^1 in I_S for i = 2..n
            bool split_here = true;
            for (int m = 1; m < n; ++m) {
                if (!c.comps[size_t(m)].partial(0).restricted(0).is_zero()) {
                    split_here = false;
                    break;
                }
            }
            if (property == AtlasProperty::splitting) {
                if (!split_here) res.failures.push_back("splitting fails on " + where);
                continue;
            }
            // comfortable: additionally d^2 z-hat^1 / (d z^1)^2 in I_S
            bool comf_here =
                split_here && c.comps[0].partial(0).partial(0).restricted(0).is_zero();
            if (!comf_here) res.failures.push_back("comfortable fails on " + where);
        }
    }
    res.pass = res.failures.empty();
    return res;
}

}  // namespace coindex
