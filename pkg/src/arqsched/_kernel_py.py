"""Pure-Python episode kernel; bit-identical fallback for the Cython one.

Both kernels consume pre-generated uniforms, so their outputs match exactly
and the choice of implementation never affects results, only speed.
"""

IMPL = "python"

# policy codes shared with the compiled kernel
GREEDY_STRUCTURED = 0
GREEDY_ARGMAX = 1
GENIE = 2
ROUND_ROBIN = 3
RANDOM = 4


def run_slots(policy, horizon, burn_in, cum_rows, cum_ss, alpha,
              erew_obs, erew_ss, p2a, type1, cap,
              u_init, u_chain, u_act, trace, trace_out):
    """Simulate one episode; returns accrued reward over slots >= burn_in.

    cum_rows: 3x3 cumulative transition rows; cum_ss: cumulative steady state;
    erew_obs[j-1][l]: expected reward of belief (j, l); erew_ss: steady belief
    reward.  Beliefs advance symbolically and collapse to steady past `cap`.
    When `trace` is true, trace_out[t] receives
    (s1, s2, action, feedback, o1, l1, o2, l2) as recorded at decision time.
    """
    cum = [list(row) for row in cum_rows]
    ess = [float(cum_ss[0]), float(cum_ss[1])]
    al = list(alpha)
    er = [list(row) for row in erew_obs]

    def draw(c0, c1, u):
        return 1 + (u >= c0) + (u >= c1)

    s1 = draw(ess[0], ess[1], u_init[0])
    s2 = draw(ess[0], ess[1], u_init[1])
    o1 = l1 = o2 = l2 = 0  # both beliefs start steady
    last = 0
    ps1 = ps2 = 0  # previous-slot true states (genie's information)
    total = 0.0

    for t in range(horizon):
        if policy == GREEDY_ARGMAX:
            r1 = erew_ss if o1 == 0 else er[o1 - 1][l1]
            r2 = erew_ss if o2 == 0 else er[o2 - 1][l2]
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
                    oo, ol = (o2, l2) if last == 1 else (o1, l1)
                    ro = erew_ss if oo == 0 else er[oo - 1][ol]
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
        else:  # RANDOM
            a = 1 if u_act[t] < 0.5 else 2

        f = s1 if a == 1 else s2
        reward = al[f - 1]
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

        # belief update: scheduled resets to (f, 0), the other advances
        if a == 1:
            o1, l1 = f, 0
            if o2 != 0:
                l2 += 1
                if l2 > cap:
                    o2, l2 = 0, 0
        else:
            o2, l2 = f, 0
            if o1 != 0:
                l1 += 1
                if l1 > cap:
                    o1, l1 = 0, 0
        last = a
        ps1, ps2 = s1, s2

        c = cum[s1 - 1]
        s1 = draw(c[0], c[1], u_chain[t, 0])
        c = cum[s2 - 1]
        s2 = draw(c[0], c[1], u_chain[t, 1])

    return total
