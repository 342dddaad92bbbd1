#ifndef EMN_SCREENINGS_HPP
#define EMN_SCREENINGS_HPP

#include <string>
#include <vector>

#include "emn/currents.hpp"

namespace emn {

struct ScreeningReport {
    std::string id;
    bool pass = true;
    long checks = 0;
    long failures = 0;
    std::string first_failure;
    double ms = 0;
};

// The xi-eta system of odd screening operators built from the residues of the
// C currents: xi_i is the z^0 coefficient of C^-_i(z), eta_i the z^{-1}
// coefficient of C^+_i(z), for i in the c-index range. eta_i super-commutes
// with the module action; ker(eta) and coker(eta) are submodule data.
class ScreeningVerifier {
  public:
    ScreeningVerifier(int m, int n, const WeightSpec& spec, int D, int B, int W);

    const FockModule& mod() const { return alg_.mod(); }
    std::vector<int> indices() const;  // valid screening indices

    FockVector xi(int i, const FockVector& v);
    FockVector eta(int i, const FockVector& v);

    // [xi_i, eta_j] = delta_{ij}, [xi_i, xi_j] = [eta_i, eta_j] = 0 (odd
    // brackets, i.e. anticommutators), and xi_i eta_i + eta_i xi_i = id
    ScreeningReport verify_system();
    // eta_i super-commutes with every E/F/H mode in the window
    ScreeningReport verify_module_commutation();

  private:
    const CurrentSpec& c_cur(int pm, int i);
    void record(ScreeningReport& rep, const FockVector& res, const std::string& where);

    CurrentAlgebra alg_;
    int D_, B_, W_;
    std::vector<FockBasis> vecs_;
};

}  // namespace emn

#endif
