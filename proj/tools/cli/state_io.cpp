#include "state_io.hpp"

#include "params.hpp"

namespace cvq::cli {

nlohmann::json state_to_json(const GaussianState& s) {
    std::vector<double> d(s.d.data(), s.d.data() + s.d.size());
    std::vector<double> sigma;
    sigma.reserve(s.sigma.size());
    for (int i = 0; i < s.sigma.rows(); ++i)
        for (int j = 0; j < s.sigma.cols(); ++j) sigma.push_back(s.sigma(i, j));
    return {{"n_modes", s.n_modes}, {"d", d}, {"sigma", sigma}};
}

GaussianState state_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("n_modes").get<int>();
        const auto d = j.at("d").get<std::vector<double>>();
        const auto sigma = j.at("sigma").get<std::vector<double>>();
        if (n < 1 || d.size() != static_cast<std::size_t>(2 * n) ||
            sigma.size() != static_cast<std::size_t>(4 * n * n))
            throw usage_error("state json: sizes do not match n_modes");
        Vec dv = Eigen::Map<const Vec>(d.data(), 2 * n);
        Mat s(2 * n, 2 * n);
        for (int r = 0; r < 2 * n; ++r)
            for (int c = 0; c < 2 * n; ++c) s(r, c) = sigma[r * 2 * n + c];
        return make_state(dv, s);
    } catch (const nlohmann::json::exception& e) {
        throw usage_error(std::string("state json: ") + e.what());
    }
}

}  // namespace cvq::cli
