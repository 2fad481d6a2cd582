// Builds each analytic network construction and shows that forward
// evaluation reproduces the closed form exactly.

#include <cstdio>

#include <softexp/softexp.hpp>

using namespace softexp;

int main() {
    Network dot = build_inner_product(2);
    std::printf("inner product (1,2).(3,4)      = %.12g\n",
                forward(dot, std::vector<double>{1, 2, 3, 4}).front().real());

    Network dist = build_euclidean_distance(2);
    std::printf("euclidean |(5,7)-(2,3)|        = %.12g\n",
                forward(dist, std::vector<double>{5, 7, 2, 3}).front().real());

    Network poly = build_polynomial({1.0, 2.0, 3.0}); // 1 + 2x + 3x^2
    std::printf("polynomial 1+2x+3x^2 at x=2    = %.12g\n",
                forward(poly, std::vector<double>{2}).front().real());
    std::printf("  ... at x=-2 (complex mode)   = %.12g\n",
                forward(poly, std::vector<double>{-2}, EvalMode::ComplexPrincipal)
                    .front()
                    .real());

    Network rbf = build_rbf(2, 0.5, RbfSource::SquaredDistance);
    std::printf("RBF e^{-0.5 s}, s=|(1,1)-(0,0)|^2 = %.12g\n",
                forward(rbf, std::vector<double>{1, 1, 0, 0}).front().real());

    FourierSpec spec;
    spec.freqs = {1.0, 2.0};
    spec.sin_coeffs = {1.0, 0.25};
    spec.cos_coeffs = {0.0, 0.5};
    spec.offset = 0.1;
    Network fourier = build_fourier(spec);
    std::printf("sinusoid sum at x=0.7          = %.12g\n",
                forward(fourier, std::vector<double>{0.7}).front().real());

    std::printf("\nnetwork document for the inner product:\n%s", serialize(dot).c_str());
    return 0;
}
