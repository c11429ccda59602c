#ifndef RDGP_COVARIANCE_HPP
#define RDGP_COVARIANCE_HPP

#include <Eigen/Dense>

namespace rdgp {

// Blocks of the joint covariance over (u, y):
//
//   [ K_uu    K_yu^T ]
//   [ K_yu    K_yy   ]
//
// k_uu is n_u x n_u, k_yy is n_y x n_y, k_yu is n_y x n_u with
// (k_yu)_{ij} = cov(y(p_i), u(q_j)).
struct CovarianceBlocks {
    Eigen::MatrixXd k_uu;
    Eigen::MatrixXd k_yu;
    Eigen::MatrixXd k_yy;

    Eigen::Index n_u() const { return k_uu.rows(); }
    Eigen::Index n_y() const { return k_yy.rows(); }

    Eigen::MatrixXd joint() const {
        const Eigen::Index nu = n_u(), ny = n_y();
        Eigen::MatrixXd m(nu + ny, nu + ny);
        m.topLeftCorner(nu, nu) = k_uu;
        m.topRightCorner(nu, ny) = k_yu.transpose();
        m.bottomLeftCorner(ny, nu) = k_yu;
        m.bottomRightCorner(ny, ny) = k_yy;
        return m;
    }
};

} // namespace rdgp

#endif
