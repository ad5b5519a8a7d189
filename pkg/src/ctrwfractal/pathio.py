"""CSV serialization of simulated paths.

Dialect: comma-separated, mandatory header row, UTF-8, LF line endings.
Floats are written with shortest round-trip precision (repr), so files
are byte-stable across runs and reproduce the doubles exactly on read.
"""

import numpy as np

from .processes import GridPath, SubordinatorPath, TimeChange

__all__ = [
    "write_grid_path",
    "read_grid_path",
    "write_subordinator_path",
    "read_subordinator_path",
    "write_time_change",
    "read_time_change",
    "write_point_cloud_csv",
    "read_point_cloud_csv",
]


def _fmt(x):
    return repr(float(x))


def write_grid_path(path: GridPath, fh):
    d = path.d
    header = "t," + ",".join(f"x_{i + 1}" for i in range(d))
    fh.write(header + "\n")
    t = path.t_grid()
    for i in range(len(path.points)):
        fh.write(_fmt(t[i]) + "," + ",".join(_fmt(v) for v in path.points[i]) + "\n")


def read_grid_path(fh) -> GridPath:
    header = fh.readline().strip().split(",")
    if header[0] != "t":
        raise ValueError("grid path CSV must start with a 't' column")
    data = np.loadtxt(fh, delimiter=",", ndmin=2)
    t = data[:, 0]
    dt = float(t[1] - t[0]) if len(t) > 1 else 1.0
    return GridPath(dt=dt, points=data[:, 1:])


def write_subordinator_path(path: SubordinatorPath, fh):
    fh.write("x,D\n")
    x = path.x_grid()
    for i, v in enumerate(path.values):
        fh.write(_fmt(x[i]) + "," + _fmt(v) + "\n")


def read_subordinator_path(fh) -> SubordinatorPath:
    header = fh.readline().strip()
    if header != "x,D":
        raise ValueError("subordinator CSV must have header 'x,D'")
    data = np.loadtxt(fh, delimiter=",", ndmin=2)
    dx = float(data[1, 0] - data[0, 0]) if len(data) > 1 else 1.0
    return SubordinatorPath(dx=dx, values=data[:, 1])


def write_time_change(tc: TimeChange, fh):
    fh.write("t,E,passage_index\n")
    t = tc.t_grid()
    for i in range(len(tc.e_values)):
        fh.write(
            _fmt(t[i]) + "," + _fmt(tc.e_values[i]) + ","
            + str(int(tc.passage_index[i])) + "\n"
        )


def read_time_change(fh) -> TimeChange:
    header = fh.readline().strip()
    if header != "t,E,passage_index":
        raise ValueError("time change CSV must have header 't,E,passage_index'")
    data = np.loadtxt(fh, delimiter=",", ndmin=2)
    dt = float(data[1, 0] - data[0, 0]) if len(data) > 1 else 1.0
    idx = data[:, 2].astype(np.int64)
    dx = float(data[1, 1] / idx[1]) if len(data) > 1 and idx[1] > 0 else dt
    return TimeChange(dt=dt, dx=dx, e_values=data[:, 1], passage_index=idx)


def write_point_cloud_csv(points, fh):
    points = np.atleast_2d(np.asarray(points, dtype=float))
    fh.write(",".join(f"x_{i + 1}" for i in range(points.shape[1])) + "\n")
    for row in points:
        fh.write(",".join(_fmt(v) for v in row) + "\n")


def read_point_cloud_csv(fh):
    fh.readline()
    return np.loadtxt(fh, delimiter=",", ndmin=2)
