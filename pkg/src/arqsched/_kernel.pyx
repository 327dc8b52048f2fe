# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled episode kernel; mirrors _kernel_py slot for slot.

The two implementations consume the same pre-generated uniforms and perform
the same float operations in the same order, so results are bit-identical.
"""

IMPL = "cython"

GREEDY_STRUCTURED = 0
GREEDY_ARGMAX = 1
GENIE = 2
ROUND_ROBIN = 3
RANDOM = 4


cdef inline int _draw(double c0, double c1, double u) nogil:
    cdef int s = 1
    if u >= c0:
        s += 1
    if u >= c1:
        s += 1
    return s


def run_slots(int policy, int horizon, int burn_in,
              double[:, ::1] cum_rows, double[::1] cum_ss, double[::1] alpha,
              double[:, ::1] erew_obs, double erew_ss, double p2a,
              int type1, int cap,
              double[::1] u_init, double[:, ::1] u_chain, double[::1] u_act,
              int trace, int[:, ::1] trace_out):
    cdef int s1, s2, o1, l1, o2, l2, last, ps1, ps2
    cdef int t, a, f, oo, ol, f_prev
    cdef double r1, r2, ro, reward, total

    s1 = _draw(cum_ss[0], cum_ss[1], u_init[0])
    s2 = _draw(cum_ss[0], cum_ss[1], u_init[1])
    o1 = l1 = o2 = l2 = 0
    last = 0
    ps1 = ps2 = 0
    total = 0.0

    for t in range(horizon):
        if policy == GREEDY_ARGMAX:
            r1 = erew_ss if o1 == 0 else erew_obs[o1 - 1, l1]
            r2 = erew_ss if o2 == 0 else erew_obs[o2 - 1, l2]
            if r1 > r2:
                a = 1
            elif r2 > r1:
                a = 2
            else:
                a = last if last else 1
        elif policy == GREEDY_STRUCTURED:
            if last == 0:
                a = 1
            else:
                f_prev = o1 if last == 1 else o2
                if f_prev == 3:
                    a = last
                elif f_prev == 1:
                    a = 3 - last
                elif type1:
                    a = last
                else:
                    if last == 1:
                        oo = o2
                        ol = l2
                    else:
                        oo = o1
                        ol = l1
                    ro = erew_ss if oo == 0 else erew_obs[oo - 1, ol]
                    a = last if p2a >= ro else 3 - last
        elif policy == GENIE:
            if ps1 == 0:
                a = 1
            elif ps1 > ps2:
                a = 1
            elif ps2 > ps1:
                a = 2
            else:
                a = last if last else 1
        elif policy == ROUND_ROBIN:
            a = 1 if t % 2 == 0 else 2
        else:
            a = 1 if u_act[t] < 0.5 else 2

        f = s1 if a == 1 else s2
        reward = alpha[f - 1]
        if t >= burn_in:
            total += reward
        if trace:
            trace_out[t, 0] = s1
            trace_out[t, 1] = s2
            trace_out[t, 2] = a
            trace_out[t, 3] = f
            trace_out[t, 4] = o1
            trace_out[t, 5] = l1
            trace_out[t, 6] = o2
            trace_out[t, 7] = l2

        if a == 1:
            o1 = f
            l1 = 0
            if o2 != 0:
                l2 += 1
                if l2 > cap:
                    o2 = 0
                    l2 = 0
        else:
            o2 = f
            l2 = 0
            if o1 != 0:
                l1 += 1
                if l1 > cap:
                    o1 = 0
                    l1 = 0
        last = a
        ps1 = s1
        ps2 = s2

        s1 = _draw(cum_rows[s1 - 1, 0], cum_rows[s1 - 1, 1], u_chain[t, 0])
        s2 = _draw(cum_rows[s2 - 1, 0], cum_rows[s2 - 1, 1], u_chain[t, 1])

    return total
