#pragma once

// Generated by tests/reference/make_reference.py (mpmath, 40 digits). Do not edit.

namespace ref {

struct Scalar1 { double x; double value; };
struct Scalar2 { double x; double y; double value; };
struct Hyp { double a; double b; double c; double x; double value; };
struct Hyp3 { double a1; double a2; double a3; double b1; double b2; double x; double value; };
struct Fm { int m; double beta; double nu; double chi; double value; };
struct Dn { int N; double mu; double nu; double chi; double value; };
struct Series { const char* kind; double mu; double nu; double alpha; double a; double b; double value; };

inline constexpr Scalar1 zeta[] = {
    {2, 1.6449340668482264},
    {3.5, 1.1267338673170566},
    {0.5, -1.4603545088095868},
    {0.9999, -9999.4227916178328},
    {1.0001, 10000.577222947539},
    {-0.5, -0.20788622497735457},
    {-3.5, 0.004441011335479432},
    {-10.3, 0.0064095819019245481},
    {-31.7, 668035907.98192662},
    {70, 1.0},
    {0.0, -0.5},
};

inline constexpr Scalar2 hurwitz[] = {
    {3.5, 7.25, 0.0033524741021978822},
    {1.5, 1000000.0, 0.002000000500000125},
    {2.0, 0.5, 4.9348022005446793},
    {5.3, 1.0, 1.0293322056832194},
};

inline constexpr Scalar1 digamma[] = {
    {0.3, -3.5025242222001331},
    {-0.7, -2.0739527936287038},
    {5.5, 1.6110931485817511},
    {123.4, 4.8113737751162774},
    {-12.3, 4.832199881811456},
    {1.0, -0.57721566490153286},
};

inline constexpr Scalar1 zeta_log_deriv_even[] = {
    {1, -0.56996099309453281},
    {2, -0.063669764955371126},
    {5, -0.00069634044528402044},
    {12, -4.1318683827204318e-8},
};

inline constexpr Scalar1 gamma[] = {
    {-2.5, -0.94530872048294188},
    {-0.3, -4.3268511088251927},
    {0.01, 99.432585119150602},
    {7.7, 2769.8303623273146},
    {150.5, 4.6610726270973779e+261},
};

inline constexpr Scalar2 bessel_j[] = {
    {0, 10.5, -0.23664819446234713},
    {2.3, 57.2, -0.089347567031666026},
    {1.7, 1234.5, 0.020358343693593595},
    {0.5, 1000000.3, -4.5904191832495606e-5},
    {0, 2.404825557695773, -6.1087652597367304e-17},
    {4.5, 0.02, 1.9104485100841836e-11},
};

inline constexpr Scalar2 bessel_i_scaled[] = {
    {0.7, 3.2, 0.21250889696082777},
    {2.5, 900.0, 0.013253798345469869},
    {0, 0.001, 0.99900074958351556},
    {1.2, 45.0, 0.058680864159921286},
};

inline constexpr Scalar2 bessel_k_scaled[] = {
    {1.3, 0.4, 4.9922439723714211},
    {0.2, 120.0, 0.11431175112667075},
    {3.5, 1000.0, 0.039871667707510206},
    {2.0, 7.5, 0.57843541478252118},
};

inline constexpr Hyp hyp2f1[] = {
    {0.3, 1.7, 2.1, 0.85, 1.5029766647021012},
    {0.3, 1.7, 2.1, -3.2, 0.68881402646507819},
    {1.2, -0.4, 2.9, 0.99, 0.78763544219678608},
    {0.2, 0.5, 3.1, 1.0, 1.0449331707374874},
    {1.5, 2.5, 4.25, 0.3, 1.3533380572129435},
    {-0.75, 0.6, 1.4, 0.97, 0.64576607364904174},
    {2.0, 1.0, 1.5, -25.0, 0.020975024885522174},
};

inline constexpr Fm f_m[] = {
    {25, 0.7, 0.4, 0.6, 159172395298.34605},
    {60, -0.7, 1.3, -0.9, 2155921872987.8597},
    {40, 2.0, 0.0, -3.5, 5.4890925451903202e+25},
    {12, -1.5, 0.5, 1.0, 335544.32},
    {80, 0.3, 0.0, -0.25, 996297.53466656748},
};

inline constexpr Hyp3 hyp3f2[] = {
    {1, 1, 0.3, 3.4, 2, 0.93, 1.0524959443133959},
    {1, 1, 3, 4.5, 4, -2.5, 0.74515378187073538},
    {1, 1, 0.4, 2.7, 3, 0.5, 1.0274788731017692},
    {1, 1, 3, 4.0, 4, -0.9, 0.86705959859239834},
};

inline constexpr Dn delta_n[] = {
    {3, 0.6, 0.4, 0.7, 10.839073309481455},
    {2, 2.0, 1.0, 0.5, 2.5822916666666667},
    {4, 1.5, 0.0, -0.8, -1.5582820033014671},
    {0, 0.8, 0.3, 0.9, 0.58347909703439952},
    {5, 2.0, 0.5, -2.5, 498.15702815702816},
};

// Half-integer orders, closed forms through polylogarithms.
inline constexpr Series jj[] = {
    {"jj", 0.5, 0.5, 2.0, 1.0, 1.0, 1.0631730840955969},
    {"jj", 0.5, 0.5, 3.0, 1.0, 1.0, 0.97326835984905594},
    {"jj", 0.5, 0.5, 2.5, 1.0, 1.0, 1.0076953390877597},
    {"jj", 0.5, 0.5, 2.0, 2.5, 2.5, 0.1058426586663258},
    {"jj", 0.5, 0.5, 1.5, 3.0, 3.0, 0.013671726693895598},
    {"jj", 0.5, 0.5, 2.0, 1.5, 0.7, 0.75897834271043292},
    {"jj", 0.5, 0.5, 3.0, 1.5, 0.7, 0.77622924288550209},
    {"jj", 0.5, 0.5, 2.3, 2.8, 1.9, 0.080439471715503273},
    {"jj", 0.5, 0.5, 2.0, 4.0, 2.0, -0.12408293273928991},
    {"jj", 1.5, 0.5, 3.0, 1.0, 1.0, 0.77468432554552117},
    {"jj", 1.5, 0.5, 4.0, 1.0, 1.0, 0.70944025001636701},
    {"jj", 1.5, 0.5, 5.0, 2.0, 2.0, 0.25043126781274955},
    {"jj", 1.5, 0.5, 3.7, 0.8, 0.8, 0.8574329067238995},
    {"jj", 1.5, 0.5, 3.0, 2.0, 1.0, 0.48110587849953928},
    {"jj", 1.5, 0.5, 4.0, 2.0, 1.0, 0.47426420448988328},
    {"jj", 1.5, 0.5, 5.0, 3.0, 2.5, 0.072099147914659538},
    {"jj", 1.5, 0.5, 2.5, 0.9, 0.3, 1.3919855918460573},
    {"jj_alt", 0.5, 0.5, 2.5, 1.0, 1.0, 0.807258783023651},
    {"jj_alt", 0.5, 0.5, 2.0, 1.2, 0.8, 0.76351705909854184},
    {"jj_alt", 0.5, 0.5, 3.0, 0.7, 0.7, 0.94321632170989281},
};

inline constexpr Series modified[] = {
    {"k1", 0.5, 0.5, 0.25, 1.0, 0.8, 0.36685252738545972},
    {"k1", 0.3, 0.0, -1.0, 2.0, 1.0, 0.092614691832342681},
    {"k1", 1.3, 0.7, 2.2, 1.5, 2.5, 0.12958929546597921},
    {"k1", 2.5, 1.5, 0.7, 0.3, 3.0, 33.730466917812485},
    {"k2", 1.5, 0.5, 1.0, 2.0, 1.0, 0.18624497648207621},
    {"k2", 0.7, 0.2, -1.5, 2.5, 0.5, 0.074019276317663756},
    {"k2", 0.4, 0.7, 1.2, 1.0, 1.0, 0.57634892269396829},
    {"k1", 2.0, 0.0, 3.0, 1.0, 0.5, 1.5503563169898272},
    {"k1", 2.0, 0.5, 3.5, 2.0, 1.0, 0.17116441333122157},
    {"k1_alt", 0.5, 0.0, 1.0, 1.0, 0.5, 0.39231555879163409},
    {"k2_alt", 0.5, 0.3, 2.0, 0.5, 0.5, 0.7309311998197376},
};

}  // namespace ref
