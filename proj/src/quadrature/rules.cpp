#include <array>

#include "wpb/quadrature.hpp"

namespace wpb::quad_detail {

namespace {

// Abscissae and weights on [0, 1] (positive half, outermost first), as
// tabulated in QUADPACK's qk15 and qk21.
constexpr std::array<double, 8> k15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> k15_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> g7_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::array<double, 11> k21_x = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> k21_w = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208451104266, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> g10_w = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t Half, std::size_t Padded>
struct Expanded {
  std::array<double, Padded> x{};
  std::array<double, Padded> wk{};
  std::array<double, Padded> wg{};
};

// Lays the half tables out over [-1, 1] in ascending order. Gauss nodes are
// the odd positions of the half table (1, 3, 5, ...).
template <std::size_t Half, std::size_t Padded, std::size_t GHalf>
constexpr Expanded<Half, Padded> expand(const std::array<double, Half>& hx,
                                        const std::array<double, Half>& hw,
                                        const std::array<double, GHalf>& gw) {
  Expanded<Half, Padded> e;
  constexpr std::size_t n = 2 * Half - 1;
  for (std::size_t i = 0; i < Half; ++i) {
    const bool gauss = i % 2 == 1;
    const double g = gauss ? gw[i / 2] : 0.0;
    e.x[i] = -hx[i];
    e.wk[i] = hw[i];
    e.wg[i] = g;
    e.x[n - 1 - i] = hx[i];
    e.wk[n - 1 - i] = hw[i];
    e.wg[n - 1 - i] = g;
  }
  return e;
}

// G7's centre weight sits at half-table position 7 (odd), G10 has none.
constexpr auto gk15 = expand<8, 16>(k15_x, k15_w, g7_w);
constexpr auto gk21 = expand<11, 24>(k21_x, k21_w, g10_w);

}  // namespace

const GkTable& table(GkRule rule) {
  static const GkTable t15{gk15.x, gk15.wk, gk15.wg, 15};
  static const GkTable t21{gk21.x, gk21.wk, gk21.wg, 21};
  return rule == GkRule::gk21 ? t21 : t15;
}

}  // namespace wpb::quad_detail
