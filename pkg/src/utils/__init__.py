"""
工具模块

包含日志配置与引擎配置加载
"""
