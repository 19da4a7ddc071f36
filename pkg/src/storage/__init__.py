"""Scenario files, data export and run manifests."""
