#ifndef GSCALE_LOCTEST_HPP
#define GSCALE_LOCTEST_HPP

#include "gscale/scaletest.hpp"

namespace gscale::loctest {

using scaletest::SampleData;
using scaletest::Stage1;
using scaletest::TestResult;

// Generalized location test: F-test of the k-1 group coefficients in the
// mean model, GLS-whitened by the profiled correlation when clusters are
// present. Reference F(k-1, n-k).
TestResult gl_test(const SampleData& data);

struct JointResult {
    double p_location = 1.0;
    double p_scale = 1.0;
    double w_f = 0.0;     // -2(log pL + log pS)
    double p_joint = 1.0; // upper tail of chi2_4
    bool boundary = false;  // a component p sat at the floor
    TestResult location;
    TestResult scale;
};

// Joint location-scale test: Fisher combination of gl_test and gs_test run
// on the same sample (each profiles its own rho).
JointResult gjls_test(const SampleData& data, Stage1 scale_method);

}  // namespace gscale::loctest

#endif
