#!/usr/bin/env python3
"""Independent high-precision evaluation of the default-scenario quantities.

Prints the frozen expected values used by the unit tests. Uses mpmath at 50
digits and re-derives every quantity from the raw scenario numbers, so it
shares no code with the C++ implementation.
"""
from mpmath import mp, mpf, pi, sqrt, log

mp.dps = 50

kB = mpf("1.380649e-23")
c = mpf(299792458)

B = mpf(5e6); f = mpf(3e9); temp = mpf(1000)
comm_range = mpf(1e4); Pc = mpf(100); g_tx = mpf(1); g_rx = mpf(10)
radar_range = mpf(1e5); g_radar = mpf(1000); Pr = mpf(1e5)
rcs = mpf(10); proc_std = mpf(100); TB = mpf(100); duty = mpf("0.01")

lam = c / f
sn2 = kB * temp * B
ar2 = g_radar**2 * lam**2 * rcs / ((4 * pi)**3 * radar_range**4)
bc2 = (lam / (4 * pi * comm_range))**2 * g_tx * g_rx
g2 = (2 * pi)**2 / 12
stp = proc_std / c
T = TB / B
pref = duty / (2 * T)


def log2(x):
    return log(x) / log(2)


def row(name, value):
    print(f"{name:32s} {mp.nstr(value, 17)}")


row("noise_power(1000K,5MHz)", sn2)
row("noise_power(290K,1Hz)", kB * 290)
row("radar_power_gain", ar2)
row("comm_power_gain", bc2)
row("sigma_tau_proc_s", stp)

I_proc = Pr * ar2 * g2 * B**2 * stp**2
row("int_noise_stream1(alpha=0.5)", bc2 * Pc / 2 + I_proc + sn2)

crlb1 = (sn2 + bc2 * Pc) / (2 * g2 * B**2 * TB * ar2 * Pr)
row("crlb(alpha=1)", crlb1)
row("int_noise_stream2(alpha=1)", Pr * ar2 * g2 * B**2 * crlb1 + sn2)

reir0 = pref * log2(1 + 2 * stp**2 * g2 * B**2 * TB * ar2 * Pr / sn2)
row("reir_rs(alpha=0)", reir0)

mu = mpf("0.5")
row("oma_r_est(mu=0.5)",
    pref * log2(1 + 2 * stp**2 * g2 * (1 - mu)**2 * B**2 * TB * ar2 * Pr / sn2))
row("oma_r_c(mu=0.5)", mu * B * log2(1 + bc2 * Pc / (mu * sn2)))
row("noma_r_c(full)", B * log2(1 + bc2 * Pc / (sn2 + I_proc)))

alpha = (-sn2 + sqrt(ar2) * sqrt(g2) * B * stp * sqrt(2 * Pr * TB * sn2)) / (bc2 * Pc)
row("alpha_opt", alpha)


def dir_sum(a):
    p2 = a * Pc
    p1 = (1 - a) * Pc
    n1 = sn2 + I_proc + bc2 * p2
    cr = (sn2 + bc2 * p2) / (2 * g2 * B**2 * TB * ar2 * Pr)
    n2 = Pr * ar2 * g2 * B**2 * cr + sn2
    return B * log2(1 + bc2 * p1 / n1), B * log2(1 + bc2 * p2 / n2)


r1, r2 = dir_sum(alpha)
row("r_c1(alpha_opt)", r1)
row("r_c2(alpha_opt)", r2)
