#include "run_config.hpp"

#include <cstdio>
#include <sstream>

#include "blochmap/parallel.hpp"

namespace blochmap::cli {

namespace {

std::string real_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

int RunConfig::resolved_threads() const {
    return threads > 0 ? threads : default_thread_count();
}

std::string RunConfig::summary() const {
    std::ostringstream os;
    os << "version=" << k_version << " command=" << command;
    if (command == "regions" || command == "trace") {
        os << " purity=" << real_str(purity) << " plane=" << (plane ? 1 : 0);
    }
    if (command == "dimension") {
        if (purity_given) {
            os << " purity=" << real_str(purity);
        } else {
            os << " sweep_min=" << real_str(sweep_min) << " sweep_max=" << real_str(sweep_max)
               << " sweep_step=" << real_str(sweep_step);
        }
    }
    os << " window=" << real_str(window.x_min) << "," << real_str(window.x_max) << ","
       << real_str(window.y_min) << "," << real_str(window.y_max);
    os << " resolution=" << width << "x" << height;
    os << " tol=" << real_str(tol) << " max_iter=" << max_iter;
    if (!scales.empty()) {
        os << " scales=";
        for (std::size_t k = 0; k < scales.size(); ++k) {
            os << (k ? "," : "") << scales[k];
        }
    }
    os << " seed=" << seed << " depth=" << depth << " strategy=" << strategy;
    if (command == "backward") {
        os << " orbits=" << backward_orbits << " steps=" << backward_steps;
    }
    if (command == "trace") {
        os << " trace_depth=" << trace_depth << " band=" << real_str(band_lo) << ","
           << real_str(band_hi);
    }
    os << " threads=" << resolved_threads() << " out=" << out;
    return os.str();
}

Rgb label_color(ConvergenceLabel label) {
    switch (label) {
        case ConvergenceLabel::MixedC0: return {220, 30, 30};
        case ConvergenceLabel::PureC3A: return {120, 200, 255};
        case ConvergenceLabel::PureC3B: return {20, 40, 160};
        case ConvergenceLabel::NonConvergent: return {0, 0, 0};
        case ConvergenceLabel::OutsideDomain: return {255, 255, 255};
    }
    return {255, 0, 255};
}

} // namespace blochmap::cli
