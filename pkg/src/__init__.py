"""LTL policy synthesis toolkit - main package"""
