"""driveshed: drive-time reachability, local epidemic counts, and a public
commitment counter, self-hostable from flat files."""

__version__ = "0.1.0"
