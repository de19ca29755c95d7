#!/usr/bin/env python3
"""Regenerates the bundled scenario files under scenarios/.

The job scenarios share one 8-VM pool and differ only in task lengths.
The migration scenario builds the 4-provider, 40-host, 80-VM datacenter
with per-type host power curves (type 1 at 70/250 W, others scaled by
their MIPS ratio, rounded to 0.1 W).
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "scenarios"

VM_MIPS = [101, 410, 213, 54, 55, 363, 70, 118]
VM_PRICE = [5, 20, 10, 5, 5, 7, 6, 11]
VM_AVA = [40, 10, 20, 20, 30, 50, 10, 30]
VM_REL = [10, 10, 10, 50, 20, 40, 10, 20]
VM_SEC = [20, 30, 10, 40, 10, 60, 50, 30]

JOB_A = [2020, 700, 170, 100, 440, 620, 710, 660, 820, 820,
         1100, 300, 300, 40, 1750, 460, 330, 110, 550, 900]
JOB_B = [930, 110, 310, 1300, 840, 120, 310, 60, 2220, 290,
         600, 820, 1150, 670, 930, 260, 300, 410, 500, 90]


def job_scenario(name, lengths):
    return {
        "name": name,
        "providers": [{"id": 0, "name": "Provider 1"}],
        "qos": {"deadline": 100.0, "budget": 1800.0, "alpha": 0.5, "beta": 0.5},
        "de": {"np": 100, "f": 0.5, "cr": 0.1, "generations": 2000,
               "lower": -8.0, "upper": 8.0, "seed": 1},
        "tasks": [{"id": i, "length": length} for i, length in enumerate(lengths)],
        "vms": [
            {"id": i, "pes": 1, "mips": VM_MIPS[i], "price": VM_PRICE[i],
             "availability": VM_AVA[i], "reliability": VM_REL[i], "security": VM_SEC[i],
             "ram": 512, "bandwidth": 100000, "size": 2500, "provider": 0}
            for i in range(8)
        ],
    }


# (mips, ram) per VM type; 20 VMs each
VM_TYPES = [(2500, 870), (2000, 1740), (1000, 1740), (500, 613)]
# (mips, power_idle, power_max) per host type; 10 hosts per provider
HOST_TYPES = [(1860, 70.0, 250.0), (2660, 100.1, 357.5),
              (2980, 112.2, 400.5), (3220, 121.2, 432.8)]


def migration_scenario():
    vms = []
    for i in range(80):
        mips, ram = VM_TYPES[i // 20]
        vms.append({"id": i, "pes": 1, "mips": mips, "price": 0,
                    "availability": 0, "reliability": 0, "security": 0,
                    "ram": ram, "bandwidth": 100000, "size": 2500,
                    "provider": i % 4})
    hosts = []
    for i in range(40):
        mips, idle, peak = HOST_TYPES[i // 10]
        hosts.append({"id": i, "provider": i // 10, "mips": mips, "pes": 2,
                      "ram": 4096, "bandwidth": 100000000, "size": 1000000,
                      "power_idle": idle, "power_max": peak, "powered_on": True})
    return {
        "name": "migration_default",
        "providers": [{"id": i, "name": f"Provider {i + 1}"} for i in range(4)],
        "qos": {"deadline": 100.0, "budget": 1800.0, "alpha": 0.5, "beta": 0.5},
        "vms": vms,
        "hosts": hosts,
        "sim": {
            "timesteps": 288, "step_seconds": 300.0,
            "t_max": 0.8, "t_min": 0.0,
            "mode": "cooperative", "policy": "vmmndsa", "seed": 1,
            "trace": {"delta": 0.2, "u0_min": 0.2, "u0_max": 0.8},
            "precopy": {"link_bandwidth_mb_s": 1000.0, "dirty_rate": 0.3,
                        "stop_threshold_mb": 64.0, "max_iters": 10},
            "loss_ratio": {"alpha": 0.5, "beta": 0.5},
            "baselines": {"madmmt_safety": 2.5, "iqrmc_safety": 1.5,
                          "history_window": 12, "min_history": 10},
            "costs": {"cpu_s": 3.0, "mem_mb_s": 0.05, "transfer_mb": 0.001},
        },
    }


def main():
    OUT.mkdir(exist_ok=True)
    for name, doc in [("job_a", job_scenario("job_a", JOB_A)),
                      ("job_b", job_scenario("job_b", JOB_B)),
                      ("migration_default", migration_scenario())]:
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
